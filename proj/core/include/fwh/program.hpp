#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fwh/kinding.hpp"
#include "fwh/syntax.hpp"
#include "fwh/typecheck.hpp"

namespace fwh {

// Declarations shipped with every program unless disabled.
[[nodiscard]] std::string_view prelude_text() noexcept;

struct Diagnostic {
  std::string file;
  Span span;
  Judgement judgement = Judgement::typing;
  std::string code;
  std::string decl;  // declaration name, empty for file-level errors
  Failure failure;

  // First leaf of the failure tree: the rule that could not be applied.
  [[nodiscard]] std::string rule() const;
  [[nodiscard]] std::string message() const;
  [[nodiscard]] std::string render() const;
};

struct CheckedDef {
  std::string name;
  Span span;
  bool from_prelude = false;
  bool assumed = false;
  bool ok = false;
  std::optional<Con> type;          // elaborated normal form, when known
  std::optional<Term> elaborated;   // set when the body checked
  std::optional<Derivation> derivation;
};

struct LoadOptions {
  bool prelude = true;
  CheckOptions check;
};

class Program {
 public:
  [[nodiscard]] bool ok() const noexcept { return diagnostics_.empty(); }
  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
  [[nodiscard]] const std::vector<CheckedDef>& defs() const noexcept { return defs_; }
  [[nodiscard]] const TypeAbbrevs& abbrevs() const noexcept { return abbrevs_; }
  [[nodiscard]] const CheckedDef* find(std::string_view name) const;

  // Context with every definition that has a known type.
  [[nodiscard]] TypingContext context() const;
  // Context with the assumptions only; inlined terms are checked in it.
  [[nodiscard]] TypingContext assumptions() const;

  // Replaces references to checked definitions by their bodies: erased, or elaborated and
  // annotated with the declared type.
  [[nodiscard]] Term inline_erased(const Term& t) const;
  [[nodiscard]] Term inline_typed(const Term& t) const;

  [[nodiscard]] TypeChecker checker(CheckOptions options = {}) const { return TypeChecker(options, &abbrevs_); }

  friend Program check_source(const SourceFile&, const std::string&, const LoadOptions&);
  friend Program check_text(std::string_view, const std::string&, const LoadOptions&);

 private:
  void add(const Decl& d, const std::string& file, bool from_prelude, const LoadOptions& options);

  TypeAbbrevs abbrevs_;
  std::vector<CheckedDef> defs_;
  std::vector<Diagnostic> diagnostics_;
};

[[nodiscard]] Program check_source(const SourceFile& src, const std::string& file, const LoadOptions& options = {});
// Parse errors become diagnostics.
[[nodiscard]] Program check_text(std::string_view text, const std::string& file, const LoadOptions& options = {});
// Throws std::runtime_error when the file cannot be read.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace fwh
