#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fwh/derivation.hpp"

namespace fwh::detail {

enum class Tok : std::uint8_t {
  ident,
  number,
  backslash,   // \.
  bigLambda,   // /\.
  dot,
  colon,
  comma,
  semicolon,
  equals,
  fat_arrow,   // =>
  arrow,       // -> with optional polarity in `text`
  plus,
  star,
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  langle,
  rangle,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

[[nodiscard]] std::vector<Token> lex(std::string_view text);
[[nodiscard]] std::string_view describe(Tok t) noexcept;

[[noreturn]] void syntax_error(Span span, const std::string& message);

}  // namespace fwh::detail
