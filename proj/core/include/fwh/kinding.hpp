#pragma once

#include <map>
#include <optional>
#include <string>

#include "fwh/context.hpp"
#include "fwh/derivation.hpp"

namespace fwh {

// A closed, elaborated type abbreviation.
struct TypeAbbrev {
  Con body;
  Kind kind;
};
using TypeAbbrevs = std::map<std::string, TypeAbbrev, std::less<>>;

struct Elaborated {
  Con con;  // binders and mu/nu/forall indices filled in, abbreviations expanded
  Kind kind;
  Derivation derivation;
};

// Kind of a constructor constant; forall/mu/nu need their index kind.
[[nodiscard]] Kind const_kind(ConstName c, const std::optional<Kind>& index);

// Synthesizes (expected empty) or checks (expected set, up to kind subsumption) the kind of c.
// Throws Error with judgement kinding: UnboundVariable, PolarityViolation, KindMismatch, NotAnArrow,
// CannotInferKind.
[[nodiscard]] Elaborated elaborate(const KindContext& delta, const Con& c, const std::optional<Kind>& expected = {},
                                   const TypeAbbrevs* abbrevs = nullptr);

// Kinding on already-elaborated constructors.
[[nodiscard]] Kind kind_check(const KindContext& delta, const Con& c);
[[nodiscard]] Elaborated kind_check_with_derivation(const KindContext& delta, const Con& c);

// True iff c kinds to exactly `k` (or a subkind of it) under delta.
[[nodiscard]] bool kinds_to(const KindContext& delta, const Con& c, const Kind& k);

}  // namespace fwh
