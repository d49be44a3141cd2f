#include "fwh/term.hpp"

#include <algorithm>

namespace fwh {

std::string_view to_string(TermConst c) noexcept {
  switch (c) {
    case TermConst::unit: return "unit";
    case TermConst::pair: return "pair";
    case TermConst::fst: return "fst";
    case TermConst::snd: return "snd";
    case TermConst::inl: return "inl";
    case TermConst::inr: return "inr";
    case TermConst::case_of: return "case";
    case TermConst::in: return "in";
    case TermConst::out: return "out";
  }
  return "?";
}

Term Term::make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }

Term Term::var(std::string x, Span span) {
  Node n;
  n.tag = Tag::var;
  n.name = std::move(x);
  n.span = span;
  return make(std::move(n));
}

Term Term::lam(std::string x, std::optional<Con> annotation, Term body, Span span) {
  Node n;
  n.tag = Tag::lam;
  n.name = std::move(x);
  n.type = std::move(annotation);
  n.first = std::move(body.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::app(Term fun, Term arg, Span span) {
  Node n;
  n.tag = Tag::app;
  n.first = std::move(fun.node_);
  n.second = std::move(arg.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::constant(TermConst c, Span span) {
  Node n;
  n.tag = Tag::constant;
  n.constant = c;
  n.span = span;
  return make(std::move(n));
}

Term Term::ty_lam(std::string x, Kind k, Term body, Span span) {
  Node n;
  n.tag = Tag::ty_lam;
  n.name = std::move(x);
  n.kind = std::move(k);
  n.first = std::move(body.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::ty_app(Term fun, Con type, Span span) {
  Node n;
  n.tag = Tag::ty_app;
  n.type = std::move(type);
  n.first = std::move(fun.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::anno(Term inner, Con type, Span span) {
  Node n;
  n.tag = Tag::anno;
  n.type = std::move(type);
  n.first = std::move(inner.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::fix(Flavor flavor, unsigned arity, std::optional<Con> motive, Term functional, Span span) {
  Node n;
  n.tag = Tag::fix;
  n.flavor = flavor;
  n.arity = arity;
  n.type = std::move(motive);
  n.first = std::move(functional.node_);
  n.span = span;
  return make(std::move(n));
}

Term Term::with_span(Span span) const {
  Node n = *node_;
  n.span = span;
  return make(std::move(n));
}

TermSpine term_spine(const Term& t) {
  TermSpine sp{t, {}};
  for (;;) {
    if (sp.head.tag() == Term::Tag::app) {
      sp.args.push_back(SpineArg{false, sp.head.arg(), std::nullopt});
      sp.head = sp.head.fun();
    } else if (sp.head.tag() == Term::Tag::ty_app) {
      sp.args.push_back(SpineArg{true, std::nullopt, sp.head.type()});
      sp.head = sp.head.fun();
    } else {
      break;
    }
  }
  std::reverse(sp.args.begin(), sp.args.end());
  return sp;
}

Term rebuild(const Term& head, const std::vector<SpineArg>& args, std::size_t from) {
  Term out = head;
  for (std::size_t i = from; i < args.size(); ++i)
    out = args[i].is_type ? Term::ty_app(out, *args[i].type) : Term::app(out, *args[i].term);
  return out;
}

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.tag()) {
    case Term::Tag::var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case Term::Tag::constant: return;
    case Term::Tag::lam: {
      const bool inserted = bound.insert(t.name()).second;
      collect_term_vars(t.body(), bound, out);
      if (inserted) bound.erase(t.name());
      return;
    }
    case Term::Tag::app:
      collect_term_vars(t.fun(), bound, out);
      collect_term_vars(t.arg(), bound, out);
      return;
    case Term::Tag::ty_lam:
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix: collect_term_vars(t.body(), bound, out); return;
  }
}

void collect_type_vars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  auto add = [&](const std::optional<Con>& c) {
    if (!c) return;
    for (const auto& v : free_vars(*c))
      if (!bound.contains(v)) out.insert(v);
  };
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return;
    case Term::Tag::lam:
      add(t.type());
      collect_type_vars(t.body(), bound, out);
      return;
    case Term::Tag::app:
      collect_type_vars(t.fun(), bound, out);
      collect_type_vars(t.arg(), bound, out);
      return;
    case Term::Tag::ty_lam: {
      const bool inserted = bound.insert(t.name()).second;
      collect_type_vars(t.body(), bound, out);
      if (inserted) bound.erase(t.name());
      return;
    }
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix:
      add(t.type());
      collect_type_vars(t.body(), bound, out);
      return;
  }
}

bool type_var_free(const std::string& x, const Term& t) {
  auto in = [&](const std::optional<Con>& c) { return c && occurs_free(x, *c); };
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return false;
    case Term::Tag::lam: return in(t.type()) || type_var_free(x, t.body());
    case Term::Tag::app: return type_var_free(x, t.fun()) || type_var_free(x, t.arg());
    case Term::Tag::ty_lam: return t.name() != x && type_var_free(x, t.body());
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix: return in(t.type()) || type_var_free(x, t.body());
  }
  return false;
}

}  // namespace

std::set<std::string> free_term_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_term_vars(t, bound, out);
  return out;
}

std::set<std::string> free_type_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_type_vars(t, bound, out);
  return out;
}

bool term_var_free(const std::string& x, const Term& t) {
  switch (t.tag()) {
    case Term::Tag::var: return t.name() == x;
    case Term::Tag::constant: return false;
    case Term::Tag::lam: return t.name() != x && term_var_free(x, t.body());
    case Term::Tag::app: return term_var_free(x, t.fun()) || term_var_free(x, t.arg());
    case Term::Tag::ty_lam:
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix: return term_var_free(x, t.body());
  }
  return false;
}

namespace {

Term rebuild_unary(const Term& t, Term child) {
  switch (t.tag()) {
    case Term::Tag::lam: return Term::lam(t.name(), t.type(), std::move(child), t.span());
    case Term::Tag::ty_lam: return Term::ty_lam(t.name(), t.kind(), std::move(child), t.span());
    case Term::Tag::ty_app: return Term::ty_app(std::move(child), *t.type(), t.span());
    case Term::Tag::anno: return Term::anno(std::move(child), *t.type(), t.span());
    case Term::Tag::fix: return Term::fix(t.flavor(), t.arity(), t.type(), std::move(child), t.span());
    default: return t;
  }
}

Term rename_type_binder(const Term& t, const std::set<std::string>& avoid) {
  std::set<std::string> body_free = free_type_vars(t.body());
  const std::string y = fresh_name(t.name(), [&](const std::string& n) { return avoid.contains(n) || body_free.contains(n); });
  return Term::ty_lam(y, t.kind(), subst_type_in_term(Con::var(y), t.name(), t.body()), t.span());
}

Term subst_term_impl(const Term& s, const std::string& x, const std::set<std::string>& s_terms,
                     const std::set<std::string>& s_types, const Term& t) {
  if (!term_var_free(x, t)) return t;
  switch (t.tag()) {
    case Term::Tag::var: return s;
    case Term::Tag::constant: return t;
    case Term::Tag::app:
      return Term::app(subst_term_impl(s, x, s_terms, s_types, t.fun()), subst_term_impl(s, x, s_terms, s_types, t.arg()),
                       t.span());
    case Term::Tag::lam: {
      if (!s_terms.contains(t.name()))
        return rebuild_unary(t, subst_term_impl(s, x, s_terms, s_types, t.body()));
      std::set<std::string> body_free = free_term_vars(t.body());
      const std::string y = fresh_name(t.name(), [&](const std::string& n) {
        return s_terms.contains(n) || body_free.contains(n) || n == x;
      });
      Term body = subst_term(Term::var(y), t.name(), t.body());
      return Term::lam(y, t.type(), subst_term_impl(s, x, s_terms, s_types, body), t.span());
    }
    case Term::Tag::ty_lam: {
      const Term fresh = s_types.contains(t.name()) ? rename_type_binder(t, s_types) : t;
      return rebuild_unary(fresh, subst_term_impl(s, x, s_terms, s_types, fresh.body()));
    }
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix: return rebuild_unary(t, subst_term_impl(s, x, s_terms, s_types, t.body()));
  }
  return t;
}

Term subst_type_impl(const Con& g, const std::string& x, const std::set<std::string>& g_free, const Term& t) {
  if (!type_var_free(x, t)) return t;
  auto sub = [&](const std::optional<Con>& c) -> std::optional<Con> {
    if (!c) return c;
    return subst_constructor(g, x, *c);
  };
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return t;
    case Term::Tag::app:
      return Term::app(subst_type_impl(g, x, g_free, t.fun()), subst_type_impl(g, x, g_free, t.arg()), t.span());
    case Term::Tag::lam: return Term::lam(t.name(), sub(t.type()), subst_type_impl(g, x, g_free, t.body()), t.span());
    case Term::Tag::ty_lam: {
      const Term fresh = g_free.contains(t.name()) ? rename_type_binder(t, g_free) : t;
      return rebuild_unary(fresh, subst_type_impl(g, x, g_free, fresh.body()));
    }
    case Term::Tag::ty_app: return Term::ty_app(subst_type_impl(g, x, g_free, t.fun()), *sub(t.type()), t.span());
    case Term::Tag::anno: return Term::anno(subst_type_impl(g, x, g_free, t.inner()), *sub(t.type()), t.span());
    case Term::Tag::fix:
      return Term::fix(t.flavor(), t.arity(), sub(t.type()), subst_type_impl(g, x, g_free, t.functional()), t.span());
  }
  return t;
}

}  // namespace

Term subst_term(const Term& s, const std::string& x, const Term& t) {
  if (!term_var_free(x, t)) return t;
  return subst_term_impl(s, x, free_term_vars(s), free_type_vars(s), t);
}

Term subst_type_in_term(const Con& g, const std::string& x, const Term& t) {
  if (!type_var_free(x, t)) return t;
  return subst_type_impl(g, x, free_vars(g), t);
}

namespace {

// Renames every binder to a depth-indexed name so structural comparison decides alpha-equivalence.
Term canonical(const Term& t, int depth) {
  const std::string name = "%" + std::to_string(depth);
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return t;
    case Term::Tag::lam:
      return Term::lam(name, t.type(), canonical(subst_term(Term::var(name), t.name(), t.body()), depth + 1));
    case Term::Tag::ty_lam:
      return Term::ty_lam(name, t.kind(),
                          canonical(subst_type_in_term(Con::var(name), t.name(), t.body()), depth + 1));
    case Term::Tag::app: return Term::app(canonical(t.fun(), depth), canonical(t.arg(), depth));
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::fix: return rebuild_unary(t, canonical(t.body(), depth));
  }
  return t;
}

bool same_type(const std::optional<Con>& a, const std::optional<Con>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || alpha_eq(*a, *b);
}

bool structural_eq(const Term& a, const Term& b) {
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Term::Tag::var: return a.name() == b.name();
    case Term::Tag::constant: return a.const_value() == b.const_value();
    case Term::Tag::lam: return a.name() == b.name() && same_type(a.type(), b.type()) && structural_eq(a.body(), b.body());
    case Term::Tag::ty_lam: return a.name() == b.name() && a.kind() == b.kind() && structural_eq(a.body(), b.body());
    case Term::Tag::app: return structural_eq(a.fun(), b.fun()) && structural_eq(a.arg(), b.arg());
    case Term::Tag::ty_app:
    case Term::Tag::anno: return same_type(a.type(), b.type()) && structural_eq(a.body(), b.body());
    case Term::Tag::fix:
      return a.flavor() == b.flavor() && a.arity() == b.arity() && same_type(a.type(), b.type()) &&
             structural_eq(a.body(), b.body());
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  return structural_eq(canonical(a, 0), canonical(b, 0));
}

Term erase(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return t;
    case Term::Tag::lam: return Term::lam(t.name(), std::nullopt, erase(t.body()), t.span());
    case Term::Tag::app: return Term::app(erase(t.fun()), erase(t.arg()), t.span());
    case Term::Tag::ty_lam:
    case Term::Tag::ty_app:
    case Term::Tag::anno: return erase(t.body());
    case Term::Tag::fix: return Term::fix(t.flavor(), t.arity(), std::nullopt, erase(t.functional()), t.span());
  }
  return t;
}

std::size_t term_size(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return 1;
    case Term::Tag::app: return 1 + term_size(t.fun()) + term_size(t.arg());
    default: return 1 + term_size(t.body());
  }
}

}  // namespace fwh
