#include <set>

#include "fwh/syntax.hpp"
#include "lexer.hpp"

namespace fwh {
namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string, std::less<>> kTypeWords{"all", "mu", "nu", "oo", "s", "ord"};
const std::set<std::string, std::less<>> kTermWords{"fst", "snd", "inl", "inr", "case", "in", "out", "pair", "unit",
                                                   "fixmu", "fixnu", "match", "with", "let"};
const std::set<std::string, std::less<>> kDeclWords{"type", "def", "assume"};

std::optional<TermConst> term_constant(std::string_view w) {
  if (w == "unit") return TermConst::unit;
  if (w == "pair") return TermConst::pair;
  if (w == "fst") return TermConst::fst;
  if (w == "snd") return TermConst::snd;
  if (w == "inl") return TermConst::inl;
  if (w == "inr") return TermConst::inr;
  if (w == "case") return TermConst::case_of;
  if (w == "in") return TermConst::in;
  if (w == "out") return TermConst::out;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(detail::lex(text)) {}

  SourceFile source() {
    SourceFile f;
    while (!at(Tok::end)) f.decls.push_back(decl());
    return f;
  }

  template <typename Fn>
  auto whole(Fn&& fn) {
    auto r = fn(*this);
    expect(Tok::end);
    return r;
  }

  Kind kind() {
    Kind dom = kind_atom();
    if (at(Tok::arrow)) {
      Polarity p = arrow_polarity(next());
      return Kind::arrow(p, dom, kind());
    }
    return dom;
  }

  Con type() {
    if (at_word("all")) {
      next();
      auto [x, k] = binder_with_kind();
      expect(Tok::dot);
      return Con::app(Con::constant(ConstName::forall), Con::lam(x, k, type()));
    }
    if (at(Tok::backslash)) {
      next();
      auto [x, k] = binder_with_kind();
      expect(Tok::dot);
      return Con::lam(x, k, type());
    }
    Con left = sum_type();
    if (at(Tok::arrow)) {
      const Token& t = next();
      if (t.text != "->") syntax_error(t.span, "polarized arrows belong to kinds");
      return types::arrow(left, type());
    }
    return left;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::backslash) {
      next();
      std::string x = binder_name();
      std::optional<Con> ann;
      if (accept(Tok::colon)) ann = nested_type();
      expect(Tok::dot);
      return Term::lam(x, ann, term(), t.span);
    }
    if (t.kind == Tok::bigLambda) {
      next();
      std::string x = binder_name(true);
      expect(Tok::colon);
      Kind k = kind();
      expect(Tok::dot);
      return Term::ty_lam(x, k, term(), t.span);
    }
    if (at_word("let")) {
      next();
      std::string x = binder_name();
      std::optional<Con> ann;
      if (accept(Tok::colon)) ann = nested_type();
      expect(Tok::equals);
      ++let_depth_;
      Term bound = term();
      --let_depth_;
      expect_word("in");
      Term body = term();
      return Term::app(Term::lam(x, ann, body, t.span), bound, t.span);
    }
    if (at_word("match")) return match();
    return application();
  }

 private:
  // Declarations

  Decl decl() {
    const Token& t = peek();
    if (t.kind != Tok::ident || !kDeclWords.count(t.text))
      syntax_error(t.span, "expected 'type', 'def' or 'assume', found " + shown(t));
    next();
    if (t.text == "type") {
      std::string name = ident("type name");
      std::optional<Kind> k;
      if (accept(Tok::colon)) k = kind();
      expect(Tok::equals);
      return TypeDecl{name, k, type(), t.span};
    }
    std::string name = ident("definition name");
    if (t.text == "assume") {
      expect(Tok::colon);
      return DefDecl{name, type(), std::nullopt, t.span};
    }
    std::optional<Con> ty;
    if (accept(Tok::colon)) ty = type();
    expect(Tok::equals);
    return DefDecl{name, ty, term(), t.span};
  }

  // Kinds

  Kind kind_atom() {
    const Token& t = next();
    if (t.kind == Tok::star) return Kind::star();
    if (t.kind == Tok::ident && t.text == "ord") return Kind::ord();
    if (t.kind == Tok::lparen) {
      Kind k = kind();
      expect(Tok::rparen);
      return k;
    }
    syntax_error(t.span, "expected a kind, found " + shown(t));
  }

  static Polarity arrow_polarity(const Token& t) {
    if (t.text == "->-") return Polarity::minus;
    if (t.text == "->o") return Polarity::mixed;
    return Polarity::plus;
  }

  // Types

  std::pair<std::string, std::optional<Kind>> binder_with_kind() {
    std::string x = binder_name(true);
    std::optional<Kind> k;
    if (accept(Tok::colon)) k = kind();
    return {x, k};
  }

  Con sum_type() {
    Con left = prod_type();
    if (accept(Tok::plus)) return types::sum(left, sum_type());
    return left;
  }

  Con prod_type() {
    Con left = app_type();
    if (accept(Tok::star)) return types::prod(left, prod_type());
    return left;
  }

  bool type_atom_start() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: return !kDeclWords.count(t.text) && t.text != "ord";
      case Tok::number:
      case Tok::lparen:
      case Tok::backslash: return true;
      default: return false;
    }
  }

  Con app_type() {
    if (!type_atom_start()) syntax_error(peek().span, "expected a type, found " + shown(peek()));
    Con head = type_atom();
    while (type_atom_start()) head = Con::app(head, type_atom());
    return head;
  }

  Con type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::backslash || (t.kind == Tok::ident && t.text == "all")) return type();
    next();
    switch (t.kind) {
      case Tok::number:
        if (t.text != "1") syntax_error(t.span, "only 1 is a type-level numeral");
        return types::unit();
      case Tok::lparen: {
        if (at(Tok::plus) || at(Tok::star) || at(Tok::arrow)) {
          const Token& op = next();
          expect(Tok::rparen);
          if (op.kind == Tok::plus) return Con::constant(ConstName::sum);
          if (op.kind == Tok::star) return Con::constant(ConstName::prod);
          return Con::constant(ConstName::arrow);
        }
        Con inner = type();
        expect(Tok::rparen);
        return inner;
      }
      case Tok::ident: {
        if (t.text == "oo") return types::infty();
        if (t.text == "s") return Con::constant(ConstName::succ);
        if (t.text == "mu" || t.text == "nu") {
          Con c = Con::constant(t.text == "mu" ? ConstName::mu : ConstName::nu);
          if (accept(Tok::lbracket)) {
            c = Con::app(c, type());
            expect(Tok::rbracket);
          }
          return c;
        }
        return Con::var(t.text);
      }
      default: break;
    }
    syntax_error(t.span, "expected a type, found " + shown(t));
  }

  // A type nested inside a term: `let` scoping does not apply.
  Con nested_type() {
    int saved = std::exchange(let_depth_, 0);
    Con c = type();
    let_depth_ = saved;
    return c;
  }

  Term nested_term() {
    int saved = std::exchange(let_depth_, 0);
    Term t = term();
    let_depth_ = saved;
    return t;
  }

  // Terms

  Term match() {
    Span at_span = next().span;
    Term scrutinee = term_until_word("with");
    expect_word("with");
    expect(Tok::lbrace);
    expect_word("inl");
    std::string x = binder_name();
    expect(Tok::fat_arrow);
    Term left = nested_term();
    expect(Tok::semicolon);
    expect_word("inr");
    std::string y = binder_name();
    expect(Tok::fat_arrow);
    Term right = nested_term();
    expect(Tok::rbrace);
    Term c = Term::constant(TermConst::case_of, at_span);
    return Term::app(Term::app(Term::app(c, scrutinee, at_span), Term::lam(x, std::nullopt, left, at_span), at_span),
                     Term::lam(y, std::nullopt, right, at_span), at_span);
  }

  Term term_until_word(std::string_view w) {
    stop_words_.emplace_back(w);
    int saved = std::exchange(let_depth_, 0);
    Term t = term();
    let_depth_ = saved;
    stop_words_.pop_back();
    return t;
  }

  bool stops_here() const {
    const Token& t = peek();
    if (t.kind != Tok::ident) return false;
    if (kDeclWords.count(t.text) || t.text == "with") return true;
    if (t.text == "in" && let_depth_ > 0) return true;
    for (const auto& w : stop_words_)
      if (t.text == w) return true;
    return false;
  }

  bool term_atom_start() const {
    if (stops_here()) return false;
    switch (peek().kind) {
      case Tok::ident:
      case Tok::lparen:
      case Tok::langle:
      case Tok::lbracket:
      case Tok::backslash:
      case Tok::bigLambda: return true;
      default: return false;
    }
  }

  Term application() {
    if (!term_atom_start() || at(Tok::lbracket)) syntax_error(peek().span, "expected a term, found " + shown(peek()));
    Term head = term_atom();
    while (term_atom_start()) {
      if (at(Tok::lbracket)) {
        Span sp = next().span;
        Con ty = nested_type();
        expect(Tok::rbracket);
        head = Term::ty_app(head, ty, sp);
      } else {
        Span sp = peek().span;
        head = Term::app(head, term_atom(), sp);
      }
    }
    return head;
  }

  Term term_atom() {
    const Token& t = peek();
    if (t.kind == Tok::backslash || t.kind == Tok::bigLambda || at_word("let") || at_word("match")) return term();
    next();
    switch (t.kind) {
      case Tok::ident: {
        if (t.text == "fixmu" || t.text == "fixnu") return fix(t);
        if (auto c = term_constant(t.text)) return Term::constant(*c, t.span);
        if (kTermWords.count(t.text)) syntax_error(t.span, "unexpected keyword '" + t.text + "'");
        return Term::var(t.text, t.span);
      }
      case Tok::lparen: {
        if (accept(Tok::rparen)) return Term::constant(TermConst::unit, t.span);
        Term inner = nested_term();
        if (accept(Tok::colon)) {
          Con ty = nested_type();
          expect(Tok::rparen);
          return Term::anno(inner, ty, t.span);
        }
        expect(Tok::rparen);
        return inner;
      }
      case Tok::langle: {
        Term a = nested_term();
        expect(Tok::comma);
        Term b = nested_term();
        expect(Tok::rangle);
        Term p = Term::constant(TermConst::pair, t.span);
        return Term::app(Term::app(p, a, t.span), b, t.span);
      }
      default: break;
    }
    syntax_error(t.span, "expected a term, found " + shown(t));
  }

  Term fix(const Token& kw) {
    const Token& n = next();
    if (n.kind != Tok::number) syntax_error(n.span, "expected the fixpoint arity, found " + shown(n));
    unsigned arity = static_cast<unsigned>(std::stoul(n.text));
    std::optional<Con> motive;
    if (accept(Tok::lbracket)) {
      motive = nested_type();
      expect(Tok::rbracket);
    }
    if (!term_atom_start() || at(Tok::lbracket)) syntax_error(peek().span, "expected the fixpoint body");
    Term body = term_atom();
    return Term::fix(kw.text == "fixmu" ? Flavor::mu : Flavor::nu, arity, motive, body, kw.span);
  }

  // Tokens

  std::string binder_name(bool type_level = false) {
    const Token& t = next();
    bool reserved = type_level ? kTypeWords.count(t.text) > 0 : kTermWords.count(t.text) > 0 || t.text == "in";
    if (t.kind != Tok::ident || reserved || kDeclWords.count(t.text))
      syntax_error(t.span, "expected a binder name, found " + shown(t));
    return t.text;
  }

  std::string ident(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::ident || kDeclWords.count(t.text)) syntax_error(t.span, std::string("expected ") + what);
    return t.text;
  }

  static std::string shown(const Token& t) {
    if (t.kind == Tok::ident || t.kind == Tok::number) return "'" + t.text + "'";
    return std::string(detail::describe(t.kind));
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::ident && peek().text == w; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  void expect(Tok k) {
    if (!at(k))
      syntax_error(peek().span, "expected " + std::string(detail::describe(k)) + ", found " + shown(peek()));
    next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) syntax_error(peek().span, "expected '" + std::string(w) + "', found " + shown(peek()));
    next();
  }

  [[noreturn]] static void syntax_error(Span span, const std::string& message) { detail::syntax_error(span, message); }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int let_depth_ = 0;
  std::vector<std::string> stop_words_;
};

}  // namespace

SourceFile parse_source(std::string_view text) { return Parser(text).source(); }
Kind parse_kind(std::string_view text) {
  return Parser(text).whole([](Parser& p) { return p.kind(); });
}
Con parse_type(std::string_view text) {
  return Parser(text).whole([](Parser& p) { return p.type(); });
}
Term parse_term(std::string_view text) {
  return Parser(text).whole([](Parser& p) { return p.term(); });
}

bool alpha_eq(const Decl& a, const Decl& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ta = std::get_if<TypeDecl>(&a)) {
    const auto& tb = std::get<TypeDecl>(b);
    return ta->name == tb.name && ta->kind == tb.kind && alpha_eq(ta->body, tb.body);
  }
  const auto& da = std::get<DefDecl>(a);
  const auto& db = std::get<DefDecl>(b);
  if (da.name != db.name || da.type.has_value() != db.type.has_value() || da.body.has_value() != db.body.has_value())
    return false;
  if (da.type && !alpha_eq(*da.type, *db.type)) return false;
  return !da.body || alpha_eq(*da.body, *db.body);
}

}  // namespace fwh
