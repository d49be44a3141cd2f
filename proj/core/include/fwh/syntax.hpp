#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fwh/constructor.hpp"
#include "fwh/derivation.hpp"
#include "fwh/term.hpp"

namespace fwh {

// type Name [: kind] = constructor
struct TypeDecl {
  std::string name;
  std::optional<Kind> kind;
  Con body;
  Span span;
};

// def name [: type] = term, or assume name : type (no body).
struct DefDecl {
  std::string name;
  std::optional<Con> type;
  std::optional<Term> body;
  Span span;
};

using Decl = std::variant<TypeDecl, DefDecl>;

struct SourceFile {
  std::vector<Decl> decls;
};

// Parsers throw Error with judgement syntax, code ParseError, rule "parse".
[[nodiscard]] SourceFile parse_source(std::string_view text);
[[nodiscard]] Kind parse_kind(std::string_view text);
[[nodiscard]] Con parse_type(std::string_view text);
[[nodiscard]] Term parse_term(std::string_view text);

[[nodiscard]] std::string to_string(const Decl& d);
[[nodiscard]] std::string to_string(const SourceFile& f);

[[nodiscard]] bool alpha_eq(const Decl& a, const Decl& b);

}  // namespace fwh
