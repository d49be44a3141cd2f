#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fwh/constructor.hpp"
#include "fwh/derivation.hpp"

namespace fwh {

enum class TermConst : std::uint8_t { unit, pair, fst, snd, inl, inr, case_of, in, out };

[[nodiscard]] std::string_view to_string(TermConst c) noexcept;

// Object-level term.  Immutable and shared.
class Term {
 public:
  enum class Tag : std::uint8_t { var, lam, app, constant, ty_lam, ty_app, anno, fix };

  static Term var(std::string x, Span span = {});
  static Term lam(std::string x, std::optional<Con> annotation, Term body, Span span = {});
  static Term app(Term fun, Term arg, Span span = {});
  static Term constant(TermConst c, Span span = {});
  static Term ty_lam(std::string x, Kind k, Term body, Span span = {});
  static Term ty_app(Term fun, Con type, Span span = {});
  static Term anno(Term inner, Con type, Span span = {});
  // fix^flavor_n [motive] functional
  static Term fix(Flavor flavor, unsigned arity, std::optional<Con> motive, Term functional, Span span = {});

  [[nodiscard]] Tag tag() const noexcept { return node_->tag; }
  [[nodiscard]] Span span() const noexcept { return node_->span; }
  [[nodiscard]] const std::string& name() const noexcept { return node_->name; }  // var, lam, ty_lam
  // lam annotation, ty_app argument, anno type, fix motive
  [[nodiscard]] const std::optional<Con>& type() const noexcept { return node_->type; }
  [[nodiscard]] const Kind& kind() const noexcept { return node_->kind; }  // ty_lam
  [[nodiscard]] TermConst const_value() const noexcept { return node_->constant; }
  [[nodiscard]] Flavor flavor() const noexcept { return node_->flavor; }
  [[nodiscard]] unsigned arity() const noexcept { return node_->arity; }
  // lam/ty_lam body, app/ty_app function, anno inner term, fix functional
  [[nodiscard]] Term body() const { return Term(node_->first); }
  [[nodiscard]] Term fun() const { return Term(node_->first); }
  [[nodiscard]] Term inner() const { return Term(node_->first); }
  [[nodiscard]] Term functional() const { return Term(node_->first); }
  [[nodiscard]] Term arg() const { return Term(node_->second); }  // app argument

  [[nodiscard]] bool is_const(TermConst c) const noexcept { return tag() == Tag::constant && const_value() == c; }
  [[nodiscard]] bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

  [[nodiscard]] Term with_span(Span span) const;

 private:
  struct Node {
    Tag tag = Tag::var;
    std::string name;
    std::optional<Con> type;
    Kind kind;
    TermConst constant = TermConst::unit;
    Flavor flavor = Flavor::mu;
    unsigned arity = 0;
    std::shared_ptr<const Node> first;
    std::shared_ptr<const Node> second;
    Span span;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Node n);
  std::shared_ptr<const Node> node_;
};

// Argument of a term spine: a term or a type.
struct SpineArg {
  bool is_type = false;
  std::optional<Term> term;
  std::optional<Con> type;
};

struct TermSpine {
  Term head;
  std::vector<SpineArg> args;
};

// Peels applications and type applications.
[[nodiscard]] TermSpine term_spine(const Term& t);
[[nodiscard]] Term rebuild(const Term& head, const std::vector<SpineArg>& args, std::size_t from = 0);

[[nodiscard]] std::set<std::string> free_term_vars(const Term& t);
[[nodiscard]] std::set<std::string> free_type_vars(const Term& t);
[[nodiscard]] bool term_var_free(const std::string& x, const Term& t);

// [s/x]t and [g/X]t, capture-avoiding.
[[nodiscard]] Term subst_term(const Term& s, const std::string& x, const Term& t);
[[nodiscard]] Term subst_type_in_term(const Con& g, const std::string& x, const Term& t);

[[nodiscard]] bool alpha_eq(const Term& a, const Term& b);

// Drops type abstractions, type applications, annotations and lambda annotations.
[[nodiscard]] Term erase(const Term& t);

[[nodiscard]] std::size_t term_size(const Term& t);

[[nodiscard]] std::string to_string(const Term& t);

}  // namespace fwh
