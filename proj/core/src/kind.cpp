#include "fwh/kind.hpp"

#include <stdexcept>

namespace fwh {

Kind Kind::ord() {
  Kind k;
  k.shape_ = Shape::ord;
  k.pure_ = false;
  return k;
}

Kind Kind::arrow(Polarity polarity, Kind domain, Kind codomain) {
  Kind k;
  k.shape_ = Shape::arrow;
  k.pure_ = domain.pure() && codomain.pure();
  k.arrow_ = std::make_shared<const ArrowData>(ArrowData{polarity, std::move(domain), std::move(codomain)});
  return k;
}

Polarity Kind::polarity() const {
  if (!is_arrow()) throw std::logic_error("polarity() on a non-arrow kind");
  return arrow_->polarity;
}

const Kind& Kind::domain() const {
  if (!is_arrow()) throw std::logic_error("domain() on a non-arrow kind");
  return arrow_->domain;
}

const Kind& Kind::codomain() const {
  if (!is_arrow()) throw std::logic_error("codomain() on a non-arrow kind");
  return arrow_->codomain;
}

bool operator==(const Kind& a, const Kind& b) {
  if (a.shape_ != b.shape_) return false;
  if (!a.is_arrow()) return true;
  if (a.arrow_ == b.arrow_) return true;
  return a.arrow_->polarity == b.arrow_->polarity && a.arrow_->domain == b.arrow_->domain &&
         a.arrow_->codomain == b.arrow_->codomain;
}

bool kind_leq(const Kind& k1, const Kind& k2) {
  if (k1.shape() != k2.shape()) return false;
  if (!k1.is_arrow()) return true;
  return polarity_leq(k2.polarity(), k1.polarity()) && kind_leq(k2.domain(), k1.domain()) &&
         kind_leq(k1.codomain(), k2.codomain());
}

namespace {
std::string render(const Kind& k, bool nested) {
  switch (k.shape()) {
    case Kind::Shape::star: return "*";
    case Kind::Shape::ord: return "ord";
    case Kind::Shape::arrow: {
      std::string s = render(k.domain(), true) + " ->" + std::string(to_string(k.polarity())) + " " +
                      render(k.codomain(), false);
      return nested ? "(" + s + ")" : s;
    }
  }
  return "?";
}
}  // namespace

std::string to_string(const Kind& k) { return render(k, false); }

}  // namespace fwh
