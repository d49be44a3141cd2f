#pragma once

#include <memory>
#include <string>

#include "fwh/polarity.hpp"

namespace fwh {

// Kinds: *, ord, and polarized arrows.  Cheap to copy; arrow payloads are shared.
class Kind {
 public:
  enum class Shape : std::uint8_t { star, ord, arrow };

  Kind() = default;  // *
  static Kind star() { return Kind{}; }
  static Kind ord();
  static Kind arrow(Polarity polarity, Kind domain, Kind codomain);

  [[nodiscard]] Shape shape() const noexcept { return shape_; }
  [[nodiscard]] bool is_star() const noexcept { return shape_ == Shape::star; }
  [[nodiscard]] bool is_ord() const noexcept { return shape_ == Shape::ord; }
  [[nodiscard]] bool is_arrow() const noexcept { return shape_ == Shape::arrow; }
  // True iff ord does not occur.
  [[nodiscard]] bool pure() const noexcept { return pure_; }

  // Arrow accessors; throw std::logic_error on non-arrows.
  [[nodiscard]] Polarity polarity() const;
  [[nodiscard]] const Kind& domain() const;
  [[nodiscard]] const Kind& codomain() const;

  friend bool operator==(const Kind& a, const Kind& b);

 private:
  struct ArrowData;
  Shape shape_ = Shape::star;
  bool pure_ = true;
  std::shared_ptr<const ArrowData> arrow_;
};

struct Kind::ArrowData {
  Polarity polarity;
  Kind domain;
  Kind codomain;
};

// Kind subsumption through eta: k1 <= k2 when a constructor of kind k1 may be used at k2.
[[nodiscard]] bool kind_leq(const Kind& k1, const Kind& k2);

[[nodiscard]] std::string to_string(const Kind& k);

}  // namespace fwh
