#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fwh {

// A rule application: rule name, rendered conclusion, premises.
struct Derivation {
  std::string rule;
  std::string conclusion;
  std::vector<Derivation> premises;
};

// A failed attempt: the rule that could not be applied, why, and the nested attempts behind it.
struct Failure {
  std::string rule;
  std::string message;
  std::vector<Failure> causes;
};

class Outcome {
 public:
  Outcome(Derivation d) : value_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  Outcome(Failure f) : value_(std::move(f)) {}     // NOLINT(google-explicit-constructor)

  [[nodiscard]] bool ok() const noexcept { return std::holds_alternative<Derivation>(value_); }
  explicit operator bool() const noexcept { return ok(); }
  [[nodiscard]] const Derivation& derivation() const { return std::get<Derivation>(value_); }
  [[nodiscard]] const Failure& failure() const { return std::get<Failure>(value_); }
  [[nodiscard]] Derivation take_derivation() && { return std::get<Derivation>(std::move(value_)); }
  [[nodiscard]] Failure take_failure() && { return std::get<Failure>(std::move(value_)); }

 private:
  std::variant<Derivation, Failure> value_;
};

enum class Judgement { syntax, kinding, subtyping, semicont, admissibility, typing, evaluation, usage };

[[nodiscard]] std::string_view to_string(Judgement j) noexcept;

struct Span {
  int line = 0;
  int column = 0;
  [[nodiscard]] bool known() const noexcept { return line > 0; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Static error raised by kinding, typing and the frontend.
class Error : public std::runtime_error {
 public:
  Error(Judgement judgement, std::string code, Failure failure, Span span = {});

  [[nodiscard]] Judgement judgement() const noexcept { return judgement_; }
  [[nodiscard]] const std::string& code() const noexcept { return code_; }
  [[nodiscard]] const Failure& failure() const noexcept { return failure_; }
  [[nodiscard]] Span span() const noexcept { return span_; }
  // Keeps an existing span.
  [[nodiscard]] Error located(Span span) const;

 private:
  Judgement judgement_;
  std::string code_;
  Failure failure_;
  Span span_;
};

[[nodiscard]] std::string render(const Derivation& d);
[[nodiscard]] std::string render(const Failure& f);
// Pre-order "rule: message" lines.
[[nodiscard]] std::vector<std::string> trail(const Failure& f);
// Rule names at the leaves of the failure tree.
[[nodiscard]] std::vector<std::string> leaf_rules(const Failure& f);
[[nodiscard]] std::size_t size(const Derivation& d);

}  // namespace fwh
