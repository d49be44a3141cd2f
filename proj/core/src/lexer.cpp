#include "lexer.hpp"

#include <cctype>

namespace fwh::detail {

void syntax_error(Span span, const std::string& message) {
  throw Error(Judgement::syntax, "ParseError", Failure{"parse", message, {}}, span);
}

std::string_view describe(Tok t) noexcept {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::backslash: return "'\\'";
    case Tok::bigLambda: return "'/\\'";
    case Tok::dot: return "'.'";
    case Tok::colon: return "':'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::equals: return "'='";
    case Tok::fat_arrow: return "'=>'";
    case Tok::arrow: return "'->'";
    case Tok::plus: return "'+'";
    case Tok::star: return "'*'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::langle: return "'<'";
    case Tok::rangle: return "'>'";
    case Tok::end: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](std::size_t off) { return i + off < text.size() ? text[i + off] : '\0'; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && peek(1) == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Span here{line, col};
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back(Token{k, std::string(text.substr(i, len)), here});
      advance(len);
    };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      emit(Tok::ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      emit(Tok::number, j - i);
      continue;
    }
    if (c == '-' && peek(1) == '>') {
      char p = peek(2);
      bool polarized = p == '+' || p == '-' || (p == 'o' && !ident_char(peek(3)));
      emit(Tok::arrow, polarized ? 3 : 2);
      continue;
    }
    if (c == '/' && peek(1) == '\\') {
      emit(Tok::bigLambda, 2);
      continue;
    }
    if (c == '=' && peek(1) == '>') {
      emit(Tok::fat_arrow, 2);
      continue;
    }
    switch (c) {
      case '\\': emit(Tok::backslash, 1); continue;
      case '.': emit(Tok::dot, 1); continue;
      case ':': emit(Tok::colon, 1); continue;
      case ',': emit(Tok::comma, 1); continue;
      case ';': emit(Tok::semicolon, 1); continue;
      case '=': emit(Tok::equals, 1); continue;
      case '+': emit(Tok::plus, 1); continue;
      case '*': emit(Tok::star, 1); continue;
      case '(': emit(Tok::lparen, 1); continue;
      case ')': emit(Tok::rparen, 1); continue;
      case '[': emit(Tok::lbracket, 1); continue;
      case ']': emit(Tok::rbracket, 1); continue;
      case '{': emit(Tok::lbrace, 1); continue;
      case '}': emit(Tok::rbrace, 1); continue;
      case '<': emit(Tok::langle, 1); continue;
      case '>': emit(Tok::rangle, 1); continue;
      default: break;
    }
    syntax_error(here, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::end, "", Span{line, col}});
  return out;
}

}  // namespace fwh::detail
