#pragma once

#include <optional>

#include "fwh/context.hpp"
#include "fwh/continuity.hpp"
#include "fwh/derivation.hpp"
#include "fwh/kinding.hpp"
#include "fwh/term.hpp"

namespace fwh {

// Closed type scheme of a term constant.  in/out need the index kind (pure, ending in *) and flavor.
[[nodiscard]] Con signature_type(TermConst c, const std::optional<Kind>& index = std::nullopt,
                                 Flavor flavor = Flavor::mu);

// Every term binding's type kinds to * in its prefix.  Throws Error on the first offending binding.
void check_context(const TypingContext& gamma);

struct Typed {
  Con type;  // normal form at *
  Derivation derivation;
  Term elaborated;  // binders annotated, implicit generalizations explicit
};

struct CheckOptions {
  bool check_admissibility = true;
};

// Bidirectional checker.  Errors are thrown as Error with judgement typing, subtyping, kinding or
// admissibility.
class TypeChecker {
 public:
  explicit TypeChecker(CheckOptions options = {}, const TypeAbbrevs* abbrevs = nullptr)
      : options_(options), abbrevs_(abbrevs) {}

  [[nodiscard]] Typed infer(const TypingContext& gamma, const Term& t) const;
  // `type` may be surface syntax; it is elaborated and normalized first.
  [[nodiscard]] Typed check(const TypingContext& gamma, const Term& t, const Con& type) const;

  // Elaborates a surface type at kind * and returns its normal form.
  [[nodiscard]] Con elaborate_type(const TypingContext& gamma, const Con& type) const;

 private:
  CheckOptions options_;
  const TypeAbbrevs* abbrevs_;
};

}  // namespace fwh
