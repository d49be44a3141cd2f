#pragma once

#include <optional>

#include "fwh/context.hpp"

namespace fwh {

// Beta-normal, eta-long form of an elaborated constructor at kind k; s oo collapses to oo.
[[nodiscard]] Con normalize(const KindContext& delta, const Con& c, const Kind& k);

[[nodiscard]] bool constr_equal(const KindContext& delta, const Con& a, const Con& b, const Kind& k);

// Weak-head beta reduction, kind-free.
[[nodiscard]] Con whnf(const Con& c);
// Full beta reduction without eta, kind-free; s oo collapses to oo.
[[nodiscard]] Con beta_nf(const Con& c);

// Ordinal normal form: oo, or a neutral base plus a successor offset.
struct OrdNF {
  std::optional<Con> base;  // empty means oo
  unsigned offset = 0;

  [[nodiscard]] static OrdNF infinity() { return {}; }
  [[nodiscard]] bool is_infinity() const noexcept { return !base.has_value(); }
  [[nodiscard]] Con to_con() const;
};

// Reads a beta-normal ordinal expression.
[[nodiscard]] OrdNF ord_nf(const Con& a);
[[nodiscard]] bool ord_leq(const OrdNF& a, const OrdNF& b);
[[nodiscard]] bool ord_same(const OrdNF& a, const OrdNF& b);

}  // namespace fwh
