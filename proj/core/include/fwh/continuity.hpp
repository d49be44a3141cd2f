#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fwh/context.hpp"
#include "fwh/derivation.hpp"

namespace fwh {

// Upper (limsup-pushable) or lower (liminf-pullable) semi-continuity.
enum class ContFlag : std::uint8_t { upper, lower };

[[nodiscard]] std::string_view to_string(ContFlag q) noexcept;

// Strictly positive variables; each is implicitly bound at polarity +.
struct PositiveBinding {
  std::string name;
  Kind kind;
};
using StrictPosContext = std::vector<PositiveBinding>;

[[nodiscard]] Outcome ord_pure_derivation(const KindContext& delta, const Con& a);
[[nodiscard]] bool ord_pure(const KindContext& delta, const Con& a);

// delta; pi |-^{iota q} c : k.  `iota` must be bound at kind ord in delta.
[[nodiscard]] Outcome semicont_check(const KindContext& delta, const StrictPosContext& pi, const std::string& iota,
                                     ContFlag q, const Con& c, const Kind& k);

struct AdmissibleShape {
  Flavor flavor = Flavor::mu;
  std::string size_var;
  std::vector<KindBinding> quantified;
  std::vector<Con> domains;  // the non-recursive leading arguments
  Con functor;
  std::vector<Con> params;
  std::optional<Con> codomain;  // mu only
  Con matrix;                   // normal form of motive applied to size_var
  Derivation continuity;
};

// Checks that `motive` (elaborated, kind o ord -> *) may type a fixpoint of the given flavor whose
// recursive argument follows n leading arguments.  Throws Error (judgement admissibility) with code
// ShapeMismatch or NotSemiContinuous.
[[nodiscard]] AdmissibleShape admissible(const KindContext& delta, const Con& motive, Flavor flavor, unsigned n);

}  // namespace fwh
