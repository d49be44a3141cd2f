#include <gtest/gtest.h>

#include <algorithm>

#include "fwh/program.hpp"
#include "testkit.hpp"

namespace fwh {
namespace {

Program load(std::string_view text, LoadOptions options = {}) { return check_text(text, "test.fwh", options); }

const Diagnostic& only_diagnostic(const Program& p) {
  EXPECT_EQ(p.diagnostics().size(), 1u);
  return p.diagnostics().front();
}

TEST(TypeCheck, PolymorphicIdentity) {
  EXPECT_TRUE(load("def id : all A:*. A -> A = /\\A:*. \\x. x").ok());
}

TEST(TypeCheck, ImplicitGeneralization) {
  EXPECT_TRUE(load("def id : all A:*. A -> A = \\x. x").ok());
  EXPECT_TRUE(load("def up : all i:ord. Nat i -> Nat (i+1) = \\n. n").ok());
}

TEST(TypeCheck, SizeSubsumption) {
  EXPECT_TRUE(load("def up : all i:ord. Nat i -> Nat oo = /\\i:ord. \\n. n").ok());
  const Program p = load("def down : all i:ord. Nat (i+1) -> Nat i = /\\i:ord. \\n. n");
  EXPECT_EQ(only_diagnostic(p).judgement, Judgement::subtyping);
}

TEST(TypeCheck, Mismatch) {
  const Program p = load("def bad : Nat oo = ()");
  ASSERT_FALSE(p.ok());
  EXPECT_EQ(only_diagnostic(p).decl, "bad");
  EXPECT_FALSE(only_diagnostic(p).rule().empty());
}

TEST(TypeCheck, UnboundVariable) {
  const Program p = load("def bad : Nat oo = nope");
  EXPECT_EQ(only_diagnostic(p).code, "UnboundVariable");
}

TEST(TypeCheck, ConstantsAndAnnotations) {
  EXPECT_TRUE(load("def p : Nat oo * Bool = <zero [oo], true>").ok());
  EXPECT_TRUE(load("def q : Nat oo = fst (<zero [oo], true> : Nat oo * Bool)").ok());
  EXPECT_TRUE(load("def r : Bool = match (inl () : 1 + Nat oo) with { inl u => true ; inr n => false }").ok());
}

TEST(TypeCheck, LetSugar) {
  EXPECT_TRUE(load("def two : Nat oo = let one = succ [oo] (zero [oo]) in succ [oo] one").ok());
}

TEST(TypeCheck, RecursionDefaultsToInfinity) {
  const Program p = load(
      "def len : all A:*. List oo A -> Nat oo\n"
      "  = /\\A:*. fixmu 0 [\\i:ord. List i A -> Nat oo]\n"
      "      (/\\i:ord. \\len. \\l. match out l with { inl u => zero [oo] ; inr c => succ [oo] (len (snd c)) })");
  EXPECT_TRUE(p.ok()) << (p.ok() ? "" : p.diagnostics().front().render());
}

TEST(TypeCheck, AdmissibilityCanBeDisabled) {
  const std::string text = testkit::corpus_file("loopnot").string();
  LoadOptions unsafe;
  unsafe.check.check_admissibility = false;
  EXPECT_FALSE(load(read_file(text)).ok());
  EXPECT_TRUE(load(read_file(text), unsafe).ok());
}

TEST(TypeCheck, DerivationsAreRecorded) {
  const Program p = load("def id : all A:*. A -> A = /\\A:*. \\x. x");
  const CheckedDef* d = p.find("id");
  ASSERT_NE(d, nullptr);
  ASSERT_TRUE(d->derivation.has_value());
  EXPECT_EQ(d->derivation->rule, "T-gen");
  EXPECT_TRUE(d->elaborated.has_value());
}

TEST(TypeCheck, AssumptionsEnterTheContext) {
  const Program p = load("assume k : Nat oo\ndef m : Nat oo = succ [oo] k");
  EXPECT_TRUE(p.ok());
  const TypingContext gamma = p.assumptions();
  const auto& entries = gamma.entries();
  EXPECT_TRUE(std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.is_term && e.term.name == "k"; }));
}

class AcceptedCorpus : public ::testing::TestWithParam<std::string> {};
TEST_P(AcceptedCorpus, Checks) {
  const Program p = testkit::load_corpus(GetParam());
  EXPECT_TRUE(p.ok()) << (p.ok() ? "" : p.diagnostics().front().render());
}
INSTANTIATE_TEST_SUITE_P(Corpus, AcceptedCorpus, ::testing::ValuesIn(testkit::accepted_corpus()));

class RejectedCorpus : public ::testing::TestWithParam<std::string> {};
TEST_P(RejectedCorpus, FailsAdmissibility) {
  const Program p = testkit::load_corpus(GetParam());
  ASSERT_FALSE(p.ok());
  for (const auto& d : p.diagnostics()) {
    EXPECT_EQ(d.judgement, Judgement::admissibility) << d.render();
    EXPECT_EQ(d.rule().rfind("cont-", 0), 0u) << d.render();
  }
}
INSTANTIATE_TEST_SUITE_P(Corpus, RejectedCorpus, ::testing::ValuesIn(testkit::rejected_corpus()));

TEST(TypeCheck, HungryDefinitionsRejected) {
  const Program p = testkit::load_corpus("hungry");
  std::vector<std::string> rejected;
  for (const auto& d : p.diagnostics()) rejected.push_back(d.decl);
  EXPECT_NE(std::find(rejected.begin(), rejected.end(), "h"), rejected.end());
  EXPECT_NE(std::find(rejected.begin(), rejected.end(), "tr"), rejected.end());
}

}  // namespace
}  // namespace fwh
