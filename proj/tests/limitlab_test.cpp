#include <gtest/gtest.h>

#include "fwh/limitlab.hpp"
#include "testkit.hpp"

namespace fwh::lab {
namespace {

TEST(Limits, PeriodicSequences) {
  const FinLattice l(2);
  const OrdSeq f({0b00}, {0b01, 0b10});
  EXPECT_EQ(liminf_omega(f, l), 0b00u);
  EXPECT_EQ(limsup_omega(f, l), 0b11u);
  EXPECT_EQ(inf_omega(f, l), 0b00u);
  EXPECT_EQ(sup_omega(f, l), 0b11u);
  EXPECT_EQ(liminf_brute(f, l), liminf_omega(f, l));
  EXPECT_EQ(limsup_brute(f, l), limsup_omega(f, l));
}

TEST(Limits, OrdinalSequences) {
  const OrdinalSeq phi({Ordinal::nat(0), Ordinal::nat(1)}, {Ordinal::nat(2), Ordinal::omega()});
  EXPECT_EQ(liminf_omega(phi), Ordinal::nat(2));
  EXPECT_EQ(limsup_omega(phi), Ordinal::omega());
}

TEST(Limits, MonotoneClosure) {
  std::mt19937_64 rng(testkit::kSeed);
  for (int n = 0; n < 50; ++n) {
    const MonoOp f = MonoOp::random(3, 3, rng);
    EXPECT_TRUE(MonoOp::is_monotone(3, f.table()));
  }
  EXPECT_THROW(MonoOp(1, 1, {1, 0}), std::invalid_argument);
}

TEST(Limits, FunctionSpaceIsAntitoneInTheDomain) {
  std::mt19937_64 rng(testkit::kSeed);
  const Applicative app = Applicative::random(3, rng);
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) {
      EXPECT_TRUE(FinLattice::leq(app.arrow(a | 1u, b), app.arrow(a, b)));
      EXPECT_TRUE(FinLattice::leq(app.arrow(a, b), app.arrow(a, b | 1u)));
    }
}

// Every monotone map on the four-element powerset lattice closes at omega.
TEST(Limits, ExhaustiveClosureOnSmallLattice) {
  std::size_t monotone = 0;
  for (Elem code = 0; code < (1u << 8); ++code) {
    std::vector<Elem> table{code & 3u, (code >> 2) & 3u, (code >> 4) & 3u, (code >> 6) & 3u};
    if (!MonoOp::is_monotone(2, table)) continue;
    ++monotone;
    const MonoOp f(2, 2, table);
    const Elem least = mu(f, Ordinal::omega());
    EXPECT_EQ(mu(f, Ordinal::omega(1)), least);
    EXPECT_EQ(f(least), least);
    const Elem greatest = nu(f, Ordinal::omega());
    EXPECT_EQ(nu(f, Ordinal::omega(1)), greatest);
    for (Elem x = 0; x < 4; ++x) {
      if (f(x) != x) continue;
      EXPECT_TRUE(FinLattice::leq(least, x));
      EXPECT_TRUE(FinLattice::leq(x, greatest));
    }
  }
  EXPECT_GT(monotone, 0u);
}

TEST(Lab, AllChecksPass) {
  const LabReport r = check_section_limits(testkit::kCases, testkit::kSeed);
  EXPECT_TRUE(r.passed()) << r.text();
  EXPECT_GE(r.lemmas.size(), 20u);
}

TEST(Lab, NegativeControlFindsACounterexample) {
  const LabReport r = check_section_limits(testkit::kCases, testkit::kSeed);
  bool seen = false;
  for (const auto& l : r.lemmas) {
    if (!l.expect_failure) continue;
    seen = true;
    EXPECT_GT(l.failures, 0u) << l.id;
    EXPECT_FALSE(l.witness.empty());
  }
  EXPECT_TRUE(seen);
}

TEST(Lab, Deterministic) {
  EXPECT_EQ(check_section_limits(100, 7).text(), check_section_limits(100, 7).text());
}

}  // namespace
}  // namespace fwh::lab
