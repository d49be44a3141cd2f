#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fwh/term.hpp"

namespace fwh {

// Annotations, type applications on constants and the size argument of a fixpoint are looked
// through, so typed and erased terms reduce alike.

enum class StepKind : std::uint8_t { stepped, value, neutral, stuck };

struct StepResult {
  StepKind kind;
  std::optional<Term> term;  // set when stepped
  std::string detail;        // blocking variable or junk description
};

// One leftmost-outermost reduction step anywhere in the term, including under binders.
[[nodiscard]] StepResult step(const Term& t);

// Contraction of a redex at the root only.
[[nodiscard]] std::optional<Term> contract(const Term& t);

// Weak-head classification of a term with no redex at the root.
[[nodiscard]] StepResult classify(const Term& t);

struct NormalizeOutcome {
  bool normal = false;  // false means the fuel ran out
  Term term;
  std::size_t steps = 0;
};

[[nodiscard]] NormalizeOutcome normalize_term(const Term& t, std::size_t fuel);

// One safe weak-head step.  Strong-normalization side conditions are approximated by
// normalizing the discarded or substituted subterm within sn_fuel steps.
[[nodiscard]] std::optional<Term> safe_step(const Term& t, std::size_t sn_fuel = 2000);

// Number of safe axioms whose left-hand side matches t at the root (at most one).
[[nodiscard]] std::size_t safe_axioms_matching(const Term& t, std::size_t sn_fuel = 2000);

// Every one-step reduct of t.
[[nodiscard]] std::vector<Term> all_reducts(const Term& t);

}  // namespace fwh
