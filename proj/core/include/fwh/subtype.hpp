#pragma once

#include "fwh/context.hpp"
#include "fwh/derivation.hpp"

namespace fwh {

// Decides delta |- a <= b : k for elaborated constructors; normalizes first.
[[nodiscard]] Outcome subtype(const KindContext& delta, const Con& a, const Con& b, const Kind& k);

// Same, for inputs already in normal form at k.
[[nodiscard]] Outcome subtype_normal(const KindContext& delta, const Con& a, const Con& b, const Kind& k);

}  // namespace fwh
