#include <gtest/gtest.h>

#include "fwh/normalize.hpp"
#include "fwh/syntax.hpp"
#include "testkit.hpp"

namespace fwh {
namespace {

using testkit::parse_elaborated;

KindContext sample_context() {
  KindContext d;
  d.push("i", Polarity::mixed, Kind::ord());
  d.push("A", Polarity::mixed, Kind::star());
  d.push("F", Polarity::mixed, parse_kind("* ->+ *"));
  return d;
}

Con nf(std::string_view text, const Kind& k = Kind::star()) {
  const auto d = sample_context();
  return normalize(d, parse_elaborated(d, text, k), k);
}

TEST(Normalize, Beta) { EXPECT_TRUE(alpha_eq(nf("(\\X:*. X -> X) A"), nf("A -> A"))); }

TEST(Normalize, EtaLong) {
  const Kind k = parse_kind("* ->+ *");
  const Con c = nf("F", k);
  ASSERT_EQ(c.tag(), Con::Tag::lam);
  EXPECT_TRUE(alpha_eq(c, nf("\\Y:*. F Y", k)));
}

TEST(Normalize, SuccessorOfInfinity) {
  EXPECT_TRUE(alpha_eq(nf("s (s oo)", Kind::ord()), types::infty()));
  EXPECT_TRUE(alpha_eq(nf("Nat (oo + 1)"), nf("Nat oo")));
}

TEST(Normalize, AbbreviationsUnfold) {
  EXPECT_TRUE(alpha_eq(nf("Nat i"), nf("mu[i] (\\X:*. 1 + X)")));
}

TEST(Normalize, ConstrEqual) {
  const auto d = sample_context();
  auto parse = [&](std::string_view t) { return parse_elaborated(d, t); };
  EXPECT_TRUE(constr_equal(d, parse("(\\X:*. F X) A"), parse("F A"), Kind::star()));
  EXPECT_FALSE(constr_equal(d, parse("Nat i"), parse("Nat (i+1)"), Kind::star()));
}

TEST(Normalize, WeakHead) {
  const Con c = whnf(Con::app(Con::lam("X", Kind::star(), Con::var("X")), Con::var("A")));
  EXPECT_TRUE(alpha_eq(c, Con::var("A")));
  const Con inner = types::arrow(Con::app(Con::lam("X", Kind::star(), Con::var("X")), Con::var("A")), types::unit());
  EXPECT_TRUE(alpha_eq(whnf(inner), inner));
  EXPECT_TRUE(alpha_eq(beta_nf(inner), types::arrow(Con::var("A"), types::unit())));
}

TEST(Normalize, OrdinalNormalForms) {
  const OrdNF two = ord_nf(types::succ(types::succ(Con::var("i"))));
  ASSERT_FALSE(two.is_infinity());
  EXPECT_EQ(two.offset, 2u);
  EXPECT_TRUE(alpha_eq(*two.base, Con::var("i")));
  const OrdNF i = ord_nf(Con::var("i"));
  const OrdNF oo = ord_nf(types::infty());
  EXPECT_TRUE(ord_leq(i, two));
  EXPECT_FALSE(ord_leq(two, i));
  EXPECT_TRUE(ord_leq(two, oo));
  EXPECT_FALSE(ord_leq(oo, two));
  EXPECT_FALSE(ord_leq(i, ord_nf(Con::var("j"))));
  EXPECT_TRUE(ord_same(ord_nf(types::succ(types::infty())), oo));
}

}  // namespace
}  // namespace fwh
