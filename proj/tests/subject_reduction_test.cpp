#include <gtest/gtest.h>

#include "testkit.hpp"

namespace fwh::testkit {
namespace {

constexpr std::size_t kMaxSteps = 50;

class SubjectReduction : public ::testing::TestWithParam<std::string> {};

TEST_P(SubjectReduction, ReductsKeepTheirType) {
  const Program p = load_corpus(GetParam());
  ASSERT_TRUE(p.ok());
  std::size_t checked = 0;
  for (const auto& d : p.defs()) {
    if (!d.elaborated) continue;
    const auto r = subject_reduction(p, d.name, kMaxSteps);
    EXPECT_TRUE(r.ok) << r.failure;
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

INSTANTIATE_TEST_SUITE_P(Corpus, SubjectReduction, ::testing::ValuesIn(accepted_corpus()));

TEST(SubjectReductionDemo, BreadthFirstRunsManySteps) {
  const Program p = load_corpus("bf");
  const auto r = subject_reduction(p, "demo", kMaxSteps);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.steps, kMaxSteps);
}

}  // namespace
}  // namespace fwh::testkit
