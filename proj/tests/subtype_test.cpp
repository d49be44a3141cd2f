#include <gtest/gtest.h>

#include "fwh/subtype.hpp"
#include "testkit.hpp"

namespace fwh {
namespace {

class Subtyping : public ::testing::Test {
 protected:
  Subtyping() {
    delta_.push("i", Polarity::mixed, Kind::ord());
    delta_.push("A", Polarity::mixed, Kind::star());
  }
  bool leq(std::string_view a, std::string_view b) {
    return subtype(delta_, testkit::parse_elaborated(delta_, a), testkit::parse_elaborated(delta_, b), Kind::star())
        .ok();
  }
  KindContext delta_;
};

TEST_F(Subtyping, InductiveSizesAreCovariant) {
  EXPECT_TRUE(leq("Nat i", "Nat (i+1)"));
  EXPECT_TRUE(leq("Nat i", "Nat oo"));
  EXPECT_FALSE(leq("Nat (i+1)", "Nat i"));
  EXPECT_FALSE(leq("Nat oo", "Nat i"));
  EXPECT_TRUE(leq("List i (Nat i)", "List oo (Nat oo)"));
}

TEST_F(Subtyping, CoinductiveSizesAreContravariant) {
  EXPECT_TRUE(leq("Stream (i+1) A", "Stream i A"));
  EXPECT_TRUE(leq("Stream oo A", "Stream i A"));
  EXPECT_FALSE(leq("Stream i A", "Stream (i+1) A"));
}

TEST_F(Subtyping, Functions) {
  EXPECT_TRUE(leq("Nat oo -> Nat i", "Nat i -> Nat oo"));
  EXPECT_FALSE(leq("Nat i -> Nat oo", "Nat oo -> Nat i"));
}

TEST_F(Subtyping, SumsProductsAndQuantifiers) {
  EXPECT_TRUE(leq("Nat i + Nat i * A", "Nat oo + Nat oo * A"));
  EXPECT_TRUE(leq("all X:*. X -> Nat i", "all Y:*. Y -> Nat i"));
  EXPECT_FALSE(leq("1 + A", "1 * A"));
}

TEST_F(Subtyping, EqualityUpToBeta) {
  EXPECT_TRUE(leq("(\\X:*. X -> X) (Nat i)", "Nat i -> Nat i"));
  EXPECT_TRUE(leq("Nat (oo + 1)", "Nat oo"));
}

TEST_F(Subtyping, FailureNamesARule) {
  const Outcome o = subtype(delta_, testkit::parse_elaborated(delta_, "Nat oo"),
                            testkit::parse_elaborated(delta_, "Nat i"), Kind::star());
  ASSERT_FALSE(o.ok());
  EXPECT_FALSE(o.failure().rule.empty());
  EXPECT_FALSE(leaf_rules(o.failure()).empty());
}

TEST_F(Subtyping, DerivationOnSuccess) {
  const Outcome o = subtype(delta_, testkit::parse_elaborated(delta_, "Nat i"),
                            testkit::parse_elaborated(delta_, "Nat oo"), Kind::star());
  ASSERT_TRUE(o.ok());
  EXPECT_GT(size(o.derivation()), 0u);
}

}  // namespace
}  // namespace fwh
