#include <gtest/gtest.h>

#include "fwh/program.hpp"
#include "fwh/syntax.hpp"
#include "testkit.hpp"

namespace fwh {
namespace {

void expect_round_trip(const std::string& text) {
  const SourceFile first = parse_source(text);
  const std::string printed = to_string(first);
  const SourceFile second = parse_source(printed);
  ASSERT_EQ(first.decls.size(), second.decls.size());
  for (std::size_t k = 0; k < first.decls.size(); ++k)
    EXPECT_TRUE(alpha_eq(first.decls[k], second.decls[k])) << to_string(first.decls[k]);
  EXPECT_EQ(to_string(second), printed);
}

class CorpusRoundTrip : public ::testing::TestWithParam<std::string> {};
TEST_P(CorpusRoundTrip, PrintThenParse) { expect_round_trip(read_file(testkit::corpus_file(GetParam()))); }
INSTANTIATE_TEST_SUITE_P(Corpus, CorpusRoundTrip,
                         ::testing::Values("prelude", "eqgrose", "succpred", "nats", "zip", "bf", "loop", "loopnot",
                                           "hungry"));

TEST(Syntax, RandomDeclarationsRoundTrip) {
  const auto r = testkit::round_trip_random(testkit::kCases, testkit::kSeed);
  EXPECT_EQ(r.failures, 0u) << r.summary();
  EXPECT_EQ(r.exercised, testkit::kCases);
}

TEST(Syntax, Kinds) {
  EXPECT_EQ(to_string(parse_kind("ord ->- * ->+ *")), to_string(parse_kind("ord ->- (* -> *)")));
  EXPECT_EQ(parse_kind("* -> *"), parse_kind("* ->+ *"));
  EXPECT_FALSE(parse_kind("* ->o *") == parse_kind("* ->+ *"));
}

TEST(Syntax, Sugar) {
  EXPECT_TRUE(alpha_eq(parse_term("let x = a in b x"), parse_term("(\\x. b x) a")));
  EXPECT_TRUE(alpha_eq(parse_term("match t with { inl x => a ; inr y => b }"),
                       parse_term("case t (\\x. a) (\\y. b)")));
  EXPECT_TRUE(alpha_eq(parse_term("<a, b>"), parse_term("pair a b")));
}

TEST(Syntax, TypePrecedence) {
  EXPECT_TRUE(alpha_eq(parse_type("A -> B -> C"), parse_type("A -> (B -> C)")));
  EXPECT_TRUE(alpha_eq(parse_type("A + B * C"), parse_type("A + (B * C)")));
  EXPECT_TRUE(alpha_eq(parse_type("F A -> B"), parse_type("(F A) -> B")));
  EXPECT_TRUE(alpha_eq(parse_type("\\X. X"), parse_type("\\Y. Y")));
}

TEST(Syntax, ErrorsCarryPositions) {
  try {
    (void)parse_source("def x : Nat oo =\n  (a b");
    FAIL() << "parsed an unbalanced parenthesis";
  } catch (const Error& e) {
    EXPECT_EQ(e.judgement(), Judgement::syntax);
    EXPECT_EQ(e.failure().rule, "parse");
    EXPECT_EQ(e.span().line, 2);
  }
}

TEST(Syntax, ParseErrorsBecomeDiagnostics) {
  const Program p = check_text("type = 1", "bad.fwh");
  ASSERT_EQ(p.diagnostics().size(), 1u);
  EXPECT_EQ(p.diagnostics().front().judgement, Judgement::syntax);
  EXPECT_EQ(p.diagnostics().front().file, "bad.fwh");
}

TEST(Syntax, CommentsAndAssumptions) {
  const SourceFile f = parse_source("-- a comment\nassume k : Nat oo -- trailing\n");
  ASSERT_EQ(f.decls.size(), 1u);
  const auto& d = std::get<DefDecl>(f.decls.front());
  EXPECT_EQ(d.name, "k");
  EXPECT_FALSE(d.body.has_value());
}

}  // namespace
}  // namespace fwh
