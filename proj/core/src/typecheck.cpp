#include "fwh/typecheck.hpp"

#include "fwh/normalize.hpp"
#include "fwh/subtype.hpp"

namespace fwh {

namespace {

const Kind kStar = Kind::star();

Con forall_scheme(std::initializer_list<const char*> vars, Con body) {
  for (auto it = std::rbegin(vars); it != std::rend(vars); ++it) body = types::forall(*it, kStar, std::move(body));
  return body;
}

Con v(const char* name) { return Con::var(name); }

}  // namespace

Con signature_type(TermConst c, const std::optional<Kind>& index, Flavor flavor) {
  using namespace types;
  switch (c) {
    case TermConst::unit: return unit();
    case TermConst::pair: return forall_scheme({"A", "B"}, arrow(v("A"), arrow(v("B"), prod(v("A"), v("B")))));
    case TermConst::fst: return forall_scheme({"A", "B"}, arrow(prod(v("A"), v("B")), v("A")));
    case TermConst::snd: return forall_scheme({"A", "B"}, arrow(prod(v("A"), v("B")), v("B")));
    case TermConst::inl: return forall_scheme({"A", "B"}, arrow(v("A"), sum(v("A"), v("B"))));
    case TermConst::inr: return forall_scheme({"A", "B"}, arrow(v("B"), sum(v("A"), v("B"))));
    case TermConst::case_of:
      return forall_scheme({"A", "B", "C"}, arrow(sum(v("A"), v("B")),
                                                  arrow(arrow(v("A"), v("C")), arrow(arrow(v("B"), v("C")), v("C")))));
    case TermConst::in:
    case TermConst::out: {
      const Kind k = index.value_or(kStar);
      if (!k.pure()) throw Error(Judgement::typing, "UnknownConstant", Failure{"T-c", "in/out need a pure kind", {}});
      std::vector<std::pair<std::string, Kind>> params;
      Kind cur = k;
      while (cur.is_arrow()) {
        params.emplace_back("G" + std::to_string(params.size() + 1), cur.domain());
        cur = cur.codomain();
      }
      if (!cur.is_star())
        throw Error(Judgement::typing, "UnknownConstant", Failure{"T-c", "in/out need a kind ending in *", {}});
      const ConstName which = flavor == Flavor::mu ? ConstName::mu : ConstName::nu;
      const Con f = v("F");
      auto fixpoint = [&](Con size) { return Con::app(Con::app(Con::constant(which, k), std::move(size)), f); };
      std::vector<Con> args;
      for (const auto& p : params) args.push_back(Con::var(p.first));
      std::vector<Con> unfold_args{fixpoint(v("i"))};
      unfold_args.insert(unfold_args.end(), args.begin(), args.end());
      Con unfolded = types::apply(f, unfold_args);
      Con folded = types::apply(fixpoint(succ(v("i"))), args);
      Con body = c == TermConst::in ? arrow(unfolded, folded) : arrow(folded, unfolded);
      body = forall("i", Kind::ord(), std::move(body));
      for (auto it = params.rbegin(); it != params.rend(); ++it) body = forall(it->first, it->second, std::move(body));
      return forall("F", Kind::arrow(Polarity::plus, k, k), std::move(body));
    }
  }
  return unit();
}

void check_context(const TypingContext& gamma) {
  KindContext delta;
  for (const auto& e : gamma.entries()) {
    if (!e.is_term) {
      delta.push(e.type.name, e.type.polarity, e.type.kind);
      continue;
    }
    try {
      (void)elaborate(delta, e.term.type, kStar);
    } catch (const Error& err) {
      throw Error(Judgement::typing, "IllFormedContext",
                  Failure{"cxt-var", "type of " + e.term.name + " does not have kind *", {err.failure()}});
    }
  }
}

namespace {

struct FixpointView {
  ConstName which;
  Kind index;
  Con size;
  Con functor;
  std::vector<Con> params;
};

std::optional<std::pair<Con, Con>> as_binary(const Con& a, ConstName c) {
  Spine sp = spine_of(a);
  if (sp.head.is_const(c) && sp.args.size() == 2) return std::pair{sp.args[0], sp.args[1]};
  return std::nullopt;
}

struct ForallView {
  std::string var;
  Kind kind;
  Con body;
};

std::optional<ForallView> as_forall(const Con& a) {
  Spine sp = spine_of(a);
  if (!sp.head.is_const(ConstName::forall) || sp.args.size() != 1 || sp.args[0].tag() != Con::Tag::lam)
    return std::nullopt;
  return ForallView{sp.args[0].name(), *sp.args[0].binder_kind(), sp.args[0].body()};
}

std::optional<FixpointView> as_fixpoint(const Con& a) {
  Spine sp = spine_of(a);
  if (!(sp.head.is_const(ConstName::mu) || sp.head.is_const(ConstName::nu)) || sp.args.size() < 2) return std::nullopt;
  return FixpointView{sp.head.const_name(), *sp.head.index_kind(), sp.args[0], sp.args[1],
                      std::vector<Con>(sp.args.begin() + 2, sp.args.end())};
}

std::string brief(const Term& t) {
  std::string s = to_string(t);
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

std::string typing_text(const Term& t, const Con& a) { return brief(t) + " : " + to_string(a); }

[[noreturn]] void type_error(const std::string& code, const std::string& rule, std::string message,
                             std::vector<Failure> causes = {}) {
  throw Error(Judgement::typing, code, Failure{rule, std::move(message), std::move(causes)});
}

bool inferable(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::app:
    case Term::Tag::ty_app:
    case Term::Tag::anno:
    case Term::Tag::constant:
    case Term::Tag::fix: return true;
    default: return false;
  }
}

bool all_term_args(const TermSpine& sp) {
  for (const auto& a : sp.args)
    if (a.is_type) return false;
  return true;
}

class Checker {
 public:
  Checker(const CheckOptions& options, const TypeAbbrevs* abbrevs) : options_(options), abbrevs_(abbrevs) {}

  Typed infer(const TypingContext& g, const Term& t) const {
    try {
      return infer_impl(g, t);
    } catch (const Error& e) {
      throw e.located(t.span());
    }
  }

  // a is a normal form at *.
  Typed check(const TypingContext& g, const Term& t, const Con& a) const {
    try {
      return check_impl(g, t, a);
    } catch (const Error& e) {
      throw e.located(t.span());
    }
  }

  Con elaborate_type(const TypingContext& g, const Con& a) const {
    const KindContext delta = g.kind_context();
    return normalize(delta, elaborate(delta, a, kStar, abbrevs_).con, kStar);
  }

 private:
  static Con norm(const TypingContext& g, const Con& a) { return normalize(g.kind_context(), a, kStar); }

  static std::string fresh_type_var(const TypingContext& g, const std::string& base, const Con& avoid,
                                    const std::set<std::string>& more = {}) {
    return fresh_name(base, [&](const std::string& n) {
      return g.mentions(n) || occurs_free(n, avoid) || more.contains(n);
    });
  }

  Typed finish(const TypingContext& g, Typed typed, const std::optional<Con>& expected) const {
    if (!expected) return typed;
    Outcome leq = subtype_normal(g.kind_context(), typed.type, *expected, kStar);
    if (!leq)
      throw Error(Judgement::subtyping, "SubtypeFailure",
                  Failure{"T-sub", to_string(typed.type) + " is not a subtype of " + to_string(*expected),
                          {leq.failure()}});
    std::string text = typing_text(typed.elaborated, *expected);
    return Typed{*expected,
                 Derivation{"T-sub", std::move(text), {std::move(typed.derivation), std::move(leq).take_derivation()}},
                 std::move(typed.elaborated)};
  }

  Typed check_impl(const TypingContext& g, const Term& t, const Con& a) const {
    if (auto fa = as_forall(a)) {
      if (t.tag() == Term::Tag::ty_lam) return explicit_gen(g, t, *fa, a);
      if (inferable(t)) {
        try {
          return finish(g, infer(g, t), a);
        } catch (const Error& e) {
          if (e.judgement() == Judgement::admissibility) throw;
        }
      }
      return implicit_gen(g, t, *fa, a);
    }
    switch (t.tag()) {
      case Term::Tag::lam: return check_lam(g, t, a);
      case Term::Tag::ty_lam:
        type_error("TypeMismatch", "T-gen", "type abstraction checked against " + to_string(a));
      case Term::Tag::fix: return finish(g, infer(g, Term::ty_app(t, types::infty(), t.span())), a);
      case Term::Tag::app:
      case Term::Tag::ty_app:
      case Term::Tag::constant: {
        TermSpine sp = term_spine(t);
        if (sp.head.tag() == Term::Tag::constant && all_term_args(sp)) return const_rule(g, sp, a);
        if (sp.head.tag() == Term::Tag::lam && !sp.args.empty() && !sp.args[0].is_type) return let_rule(g, sp, a);
        if (sp.head.tag() == Term::Tag::ty_lam && !sp.args.empty() && sp.args[0].is_type) return instantiate_rule(g, sp, a);
        return finish(g, infer(g, t), a);
      }
      default: return finish(g, infer(g, t), a);
    }
  }

  Typed infer_impl(const TypingContext& g, const Term& t) const {
    switch (t.tag()) {
      case Term::Tag::var: {
        const TermBinding* b = g.lookup_term(t.name());
        if (!b) type_error("UnboundVariable", "T-var", "unbound variable " + t.name());
        Con type = norm(g, b->type);
        return Typed{type, Derivation{"T-var", typing_text(t, type), {}}, t};
      }
      case Term::Tag::anno: {
        Con type = elaborate_type(g, *t.type());
        Typed inner = check(g, t.inner(), type);
        return Typed{type, Derivation{"T-sub", typing_text(t, type), {std::move(inner.derivation)}},
                     Term::anno(inner.elaborated, type, t.span())};
      }
      case Term::Tag::ty_app: return infer_ty_app(g, t);
      case Term::Tag::fix: return infer_fix(g, t);
      case Term::Tag::lam: {
        if (!t.type()) type_error("CannotInfer", "T-abs", "cannot infer the type of an unannotated abstraction");
        Con dom = elaborate_type(g, *t.type());
        Typed body = infer(g.with_term(t.name(), dom), t.body());
        Con type = norm(g, types::arrow(dom, body.type));
        Term elab = Term::lam(t.name(), dom, body.elaborated, t.span());
        return Typed{type, Derivation{"T-abs", typing_text(elab, type), {std::move(body.derivation)}}, elab};
      }
      case Term::Tag::ty_lam: {
        const std::string x = fresh_type_var(g, t.name(), Con(), free_type_vars(t.body()));
        Term body_t = x == t.name() ? t.body() : subst_type_in_term(Con::var(x), t.name(), t.body());
        Typed body = infer(g.with_type(x, t.kind()), body_t);
        Con type = norm(g, types::forall(x, t.kind(), body.type));
        Term elab = Term::ty_lam(x, t.kind(), body.elaborated, t.span());
        return Typed{type, Derivation{"T-gen", typing_text(elab, type), {std::move(body.derivation)}}, elab};
      }
      case Term::Tag::constant: {
        if (t.is_const(TermConst::in) || t.is_const(TermConst::out))
          type_error("CannotInfer", "T-c", std::string(to_string(t.const_value())) + " must be applied to an argument");
        if (t.is_const(TermConst::unit)) return const_rule(g, TermSpine{t, {}}, std::nullopt);
        Con type = norm(g, signature_type(t.const_value()));
        return Typed{type, Derivation{"T-c", typing_text(t, type), {}}, t};
      }
      case Term::Tag::app: {
        TermSpine sp = term_spine(t);
        if (sp.head.tag() == Term::Tag::constant && all_term_args(sp)) return const_rule(g, sp, std::nullopt);
        if (sp.head.tag() == Term::Tag::lam && !sp.args.empty() && !sp.args[0].is_type)
          return let_rule(g, sp, std::nullopt);
        if (sp.head.tag() == Term::Tag::ty_lam && !sp.args.empty() && sp.args[0].is_type)
          return instantiate_rule(g, sp, std::nullopt);
        Term fun = t.fun();
        if (fun.tag() == Term::Tag::fix) fun = Term::ty_app(fun, types::infty(), fun.span());
        Typed f = infer(g, fun);
        return apply_args(g, std::move(f), {SpineArg{false, t.arg(), std::nullopt}}, 0);
      }
    }
    type_error("CannotInfer", "T-var", "unreachable");
  }

  Typed infer_ty_app(const TypingContext& g, const Term& t) const {
    Typed f = infer(g, t.fun());
    auto fa = as_forall(f.type);
    if (!fa) type_error("NotPolymorphic", "T-inst", brief(t.fun()) + " has type " + to_string(f.type) + ", not a quantified type");
    const KindContext delta = g.kind_context();
    Elaborated arg = elaborate(delta, *t.type(), fa->kind, abbrevs_);
    Con arg_nf = normalize(delta, arg.con, fa->kind);
    Con type = normalize(delta, subst_constructor(arg_nf, fa->var, fa->body), kStar);
    Term elab = Term::ty_app(f.elaborated, arg_nf, t.span());
    return Typed{type, Derivation{"T-inst", typing_text(elab, type), {std::move(f.derivation), std::move(arg.derivation)}},
                 elab};
  }

  Typed infer_fix(const TypingContext& g, const Term& t) const {
    if (!t.type()) type_error("CannotInfer", "T-rec", "fixpoint needs a motive");
    const KindContext delta = g.kind_context();
    const Kind motive_kind = Kind::arrow(Polarity::mixed, Kind::ord(), kStar);
    const Con motive = normalize(delta, elaborate(delta, *t.type(), motive_kind, abbrevs_).con, motive_kind);
    std::vector<Derivation> premises;
    if (options_.check_admissibility) {
      AdmissibleShape shape = admissible(delta, motive, t.flavor(), t.arity());
      premises.push_back(Derivation{"admissible", to_string(motive) + " fix" + (t.flavor() == Flavor::mu ? "mu" : "nu") +
                                                      std::to_string(t.arity()),
                                    {std::move(shape.continuity)}});
    }
    const std::string i = fresh_type_var(g, "i", motive);
    const Con iv = Con::var(i);
    const Con step = types::forall(
        i, Kind::ord(), types::arrow(Con::app(motive, iv), Con::app(motive, types::succ(iv))));
    Typed functional = check(g, t.functional(), normalize(delta, step, kStar));
    premises.push_back(std::move(functional.derivation));
    Term elab = Term::fix(t.flavor(), t.arity(), motive, functional.elaborated, t.span());
    const Con result = normalize(delta, types::forall(i, Kind::ord(), Con::app(motive, iv)), kStar);
    const Con instance = normalize(delta.extended(i, Polarity::mixed, Kind::ord()), Con::app(motive, iv), kStar);
    Derivation rec{"T-rec", typing_text(elab, instance), std::move(premises)};
    return Typed{result, Derivation{"T-gen", typing_text(elab, result), {std::move(rec)}}, elab};
  }

  Typed apply_args(const TypingContext& g, Typed acc, const std::vector<SpineArg>& args, std::size_t from) const {
    for (std::size_t k = from; k < args.size(); ++k) {
      auto arrow = as_binary(acc.type, ConstName::arrow);
      if (!arrow) type_error("NotAFunction", "T-app", brief(acc.elaborated) + " has type " + to_string(acc.type) +
                                                          ", not a function type");
      Typed a = check(g, *args[k].term, arrow->first);
      Term elab = Term::app(acc.elaborated, a.elaborated);
      std::string text = typing_text(elab, arrow->second);
      acc = Typed{arrow->second, Derivation{"T-app", std::move(text), {std::move(acc.derivation), std::move(a.derivation)}},
                  elab};
    }
    return acc;
  }

  Typed check_lam(const TypingContext& g, const Term& t, const Con& a) const {
    auto arrow = as_binary(a, ConstName::arrow);
    if (!arrow) type_error("TypeMismatch", "T-abs", "abstraction checked against " + to_string(a));
    Con dom = arrow->first;
    if (t.type()) {
      Con ann = elaborate_type(g, *t.type());
      Outcome leq = subtype_normal(g.kind_context(), dom, ann, kStar);
      if (!leq)
        throw Error(Judgement::subtyping, "SubtypeFailure",
                    Failure{"T-abs", "annotation " + to_string(ann) + " does not accept " + to_string(dom), {leq.failure()}});
      dom = ann;
    }
    Typed body = check(g.with_term(t.name(), dom), t.body(), arrow->second);
    Term elab = Term::lam(t.name(), dom, body.elaborated, t.span());
    return Typed{a, Derivation{"T-abs", typing_text(elab, a), {std::move(body.derivation)}}, elab};
  }

  Typed explicit_gen(const TypingContext& g, const Term& t, const ForallView& fa, const Con& a) const {
    if (!(t.kind() == fa.kind))
      type_error("TypeMismatch", "T-gen", "type abstraction over " + to_string(t.kind()) + " checked against a quantifier over " +
                                              to_string(fa.kind));
    const std::string x = fresh_type_var(g, t.name(), a, free_type_vars(t.body()));
    Term body_t = x == t.name() ? t.body() : subst_type_in_term(Con::var(x), t.name(), t.body());
    Con body_ty = rename_var(fa.body, fa.var, x);
    Typed body = check(g.with_type(x, fa.kind), body_t, body_ty);
    Term elab = Term::ty_lam(x, fa.kind, body.elaborated, t.span());
    return Typed{a, Derivation{"T-gen", typing_text(elab, a), {std::move(body.derivation)}}, elab};
  }

  Typed implicit_gen(const TypingContext& g, const Term& t, const ForallView& fa, const Con& a) const {
    const std::string x = fresh_type_var(g, fa.var, a, free_type_vars(t));
    Con body_ty = rename_var(fa.body, fa.var, x);
    Typed body = check(g.with_type(x, fa.kind), t, body_ty);
    Term elab = Term::ty_lam(x, fa.kind, body.elaborated, t.span());
    return Typed{a, Derivation{"T-gen", typing_text(elab, a), {std::move(body.derivation)}}, elab};
  }

  // (\x. body) a0 a1 ... : binds x to a0 and continues with body a1 ...
  Typed let_rule(const TypingContext& g, const TermSpine& sp, const std::optional<Con>& expected) const {
    const Term& lam = sp.head;
    const Term& a0 = *sp.args[0].term;
    Typed arg = lam.type() ? check(g, a0, elaborate_type(g, *lam.type())) : infer(g, a0);
    std::string x = lam.name();
    Term body = lam.body();
    std::set<std::string> rest_free;
    for (std::size_t k = 1; k < sp.args.size(); ++k)
      if (!sp.args[k].is_type)
        for (const auto& n : free_term_vars(*sp.args[k].term)) rest_free.insert(n);
    if (rest_free.contains(x)) {
      std::set<std::string> body_free = free_term_vars(body);
      const std::string y = fresh_name(x, [&](const std::string& n) { return rest_free.contains(n) || body_free.contains(n); });
      body = subst_term(Term::var(y), x, body);
      x = y;
    }
    Term inner = rebuild(body, sp.args, 1);
    const TypingContext g2 = g.with_term(x, arg.type);
    Typed result = expected ? check(g2, inner, *expected) : infer(g2, inner);
    Term elab = Term::app(Term::lam(x, arg.type, result.elaborated, lam.span()), arg.elaborated, lam.span());
    Derivation abs{"T-abs", "\\" + x + ". " + brief(result.elaborated), {std::move(result.derivation)}};
    return Typed{result.type,
                 Derivation{"T-app", typing_text(elab, result.type), {std::move(abs), std::move(arg.derivation)}}, elab};
  }

  // (/\X. body) [A] a1 ... : continues with [A/X]body a1 ...
  Typed instantiate_rule(const TypingContext& g, const TermSpine& sp, const std::optional<Con>& expected) const {
    const Term& abs = sp.head;
    const KindContext delta = g.kind_context();
    Elaborated arg = elaborate(delta, *sp.args[0].type, abs.kind(), abbrevs_);
    const Con arg_nf = normalize(delta, arg.con, abs.kind());
    Term inner = rebuild(subst_type_in_term(arg_nf, abs.name(), abs.body()), sp.args, 1);
    Typed result = expected ? check(g, inner, *expected) : infer(g, inner);
    return Typed{result.type,
                 Derivation{"T-inst", typing_text(result.elaborated, result.type),
                            {std::move(result.derivation), std::move(arg.derivation)}},
                 result.elaborated};
  }

  // Infers u : A -> C for a branch whose domain is known.
  Typed infer_branch(const TypingContext& g, const Term& u, const Con& dom) const {
    if (u.tag() == Term::Tag::lam) {
      Con x_ty = dom;
      if (u.type()) {
        x_ty = elaborate_type(g, *u.type());
        Outcome leq = subtype_normal(g.kind_context(), dom, x_ty, kStar);
        if (!leq)
          throw Error(Judgement::subtyping, "SubtypeFailure",
                      Failure{"T-abs", "branch annotation " + to_string(x_ty) + " does not accept " + to_string(dom),
                              {leq.failure()}});
      }
      Typed body = infer(g.with_term(u.name(), x_ty), u.body());
      Con type = norm(g, types::arrow(x_ty, body.type));
      Term elab = Term::lam(u.name(), x_ty, body.elaborated, u.span());
      return Typed{type, Derivation{"T-abs", typing_text(elab, type), {std::move(body.derivation)}}, elab};
    }
    Typed f = infer(g, u);
    auto arrow = as_binary(f.type, ConstName::arrow);
    if (!arrow) type_error("NotAFunction", "T-app", "case branch " + brief(u) + " is not a function");
    Outcome leq = subtype_normal(g.kind_context(), dom, arrow->first, kStar);
    if (!leq)
      throw Error(Judgement::subtyping, "SubtypeFailure",
                  Failure{"T-sub", "case branch does not accept " + to_string(dom), {leq.failure()}});
    return f;
  }

  Typed const_rule(const TypingContext& g, const TermSpine& sp, const std::optional<Con>& expected) const {
    const TermConst c = sp.head.const_value();
    const std::size_t k = sp.args.size();
    auto arg = [&](std::size_t n) -> const Term& { return *sp.args[n].term; };
    auto head_derivation = [&](const Con& type) {
      return Derivation{"T-c", std::string(to_string(c)) + " : " + to_string(type), {}};
    };
    auto app2 = [&](Typed head, const Typed& x, Con type) {
      Term elab = Term::app(head.elaborated, x.elaborated);
      std::string text = typing_text(elab, type);
      return Typed{std::move(type), Derivation{"T-app", std::move(text), {std::move(head.derivation), x.derivation}},
                   elab};
    };
    auto constant = [&](const Con& type) { return Typed{type, head_derivation(type), sp.head}; };
    const KindContext delta = g.kind_context();

    switch (c) {
      case TermConst::unit: {
        Typed u = constant(types::unit());
        if (k > 0) return apply_args(g, std::move(u), sp.args, 0);
        return finish(g, std::move(u), expected);
      }
      case TermConst::pair: {
        if (k < 2) type_error("CannotInfer", "T-c", "pair needs two components");
        if (expected && k == 2) {
          if (auto prod = as_binary(*expected, ConstName::prod)) {
            Typed r = check(g, arg(0), prod->first);
            Typed s = check(g, arg(1), prod->second);
            Typed acc = app2(constant(norm(g, types::arrow(prod->first, types::arrow(prod->second, *expected)))),
                             std::move(r), norm(g, types::arrow(prod->second, *expected)));
            return app2(std::move(acc), std::move(s), *expected);
          }
        }
        Typed r = infer(g, arg(0));
        Typed s = infer(g, arg(1));
        Con type = norm(g, types::prod(r.type, s.type));
        Con partial = norm(g, types::arrow(s.type, type));
        Typed acc = app2(constant(norm(g, types::arrow(r.type, partial))), std::move(r), partial);
        acc = app2(std::move(acc), std::move(s), type);
        return finish(g, apply_args(g, std::move(acc), sp.args, 2), expected);
      }
      case TermConst::fst:
      case TermConst::snd: {
        if (k < 1) type_error("CannotInfer", "T-c", std::string(to_string(c)) + " needs an argument");
        Typed p = infer(g, arg(0));
        auto prod = as_binary(p.type, ConstName::prod);
        if (!prod) type_error("TypeMismatch", "T-app", brief(arg(0)) + " has type " + to_string(p.type) + ", not a product");
        Con result = c == TermConst::fst ? prod->first : prod->second;
        Typed acc = app2(constant(norm(g, types::arrow(p.type, result))), std::move(p), result);
        return finish(g, apply_args(g, std::move(acc), sp.args, 1), expected);
      }
      case TermConst::inl:
      case TermConst::inr: {
        if (k != 1 || !expected) type_error("CannotInfer", "T-c", std::string(to_string(c)) + " needs a known sum type");
        auto sum = as_binary(*expected, ConstName::sum);
        if (!sum) type_error("TypeMismatch", "T-app", std::string(to_string(c)) + " checked against " + to_string(*expected));
        const Con& part = c == TermConst::inl ? sum->first : sum->second;
        Typed r = check(g, arg(0), part);
        return app2(constant(norm(g, types::arrow(part, *expected))), std::move(r), *expected);
      }
      case TermConst::case_of: {
        if (k < 3) type_error("CannotInfer", "T-c", "case needs a scrutinee and two branches");
        Typed scrut = infer(g, arg(0));
        auto sum = as_binary(scrut.type, ConstName::sum);
        if (!sum)
          type_error("TypeMismatch", "T-app", brief(arg(0)) + " has type " + to_string(scrut.type) + ", not a sum");
        const bool checking = expected && k == 3;
        Typed left = checking ? check(g, arg(1), norm(g, types::arrow(sum->first, *expected)))
                              : infer_branch(g, arg(1), sum->first);
        const Con result = checking ? *expected : as_binary(left.type, ConstName::arrow)->second;
        Typed right = check(g, arg(2), norm(g, types::arrow(sum->second, result)));
        Con after_left = norm(g, types::arrow(types::arrow(sum->second, result), result));
        Con after_scrut = norm(g, types::arrow(types::arrow(sum->first, result), after_left));
        Typed acc = app2(constant(norm(g, types::arrow(scrut.type, after_scrut))), std::move(scrut), after_scrut);
        acc = app2(std::move(acc), std::move(left), after_left);
        acc = app2(std::move(acc), std::move(right), result);
        if (expected && k == 3) return acc;
        return finish(g, apply_args(g, std::move(acc), sp.args, 3), expected);
      }
      case TermConst::in: {
        if (k != 1 || !expected) type_error("CannotInfer", "T-c", "in needs a known inductive or coinductive type");
        auto fp = as_fixpoint(*expected);
        if (!fp) type_error("TypeMismatch", "T-app", "in checked against " + to_string(*expected));
        const OrdNF size = ord_nf(fp->size);
        OrdNF inner = size;
        if (!size.is_infinity()) {
          if (size.offset > 0) {
            --inner.offset;
          } else if (fp->which == ConstName::mu) {
            type_error("TypeMismatch", "T-app",
                       "cannot fold into " + to_string(*expected) + ": its size is not a successor or oo");
          }
        }
        Con unfolded = unfold(delta, *fp, inner.to_con());
        Typed r = check(g, arg(0), unfolded);
        return app2(constant(norm(g, types::arrow(unfolded, *expected))), std::move(r), *expected);
      }
      case TermConst::out: {
        if (k < 1) type_error("CannotInfer", "T-c", "out needs an argument");
        Typed r = infer(g, arg(0));
        auto fp = as_fixpoint(r.type);
        if (!fp) type_error("TypeMismatch", "T-app", brief(arg(0)) + " has type " + to_string(r.type) + ", not a fixpoint type");
        const OrdNF size = ord_nf(fp->size);
        OrdNF inner = size;
        if (!size.is_infinity()) {
          if (size.offset > 0) {
            --inner.offset;
          } else if (fp->which == ConstName::nu) {
            type_error("TypeMismatch", "T-app",
                       "cannot unfold " + to_string(r.type) + ": its size is not a successor or oo");
          }
        }
        Con unfolded = unfold(delta, *fp, inner.to_con());
        Typed acc = app2(constant(norm(g, types::arrow(r.type, unfolded))), std::move(r), unfolded);
        return finish(g, apply_args(g, std::move(acc), sp.args, 1), expected);
      }
    }
    type_error("UnknownConstant", "T-c", "unknown constant");
  }

  static Con unfold(const KindContext& delta, const FixpointView& fp, const Con& size) {
    Con smaller = Con::app(Con::app(Con::constant(fp.which, fp.index), size), fp.functor);
    std::vector<Con> args{smaller};
    args.insert(args.end(), fp.params.begin(), fp.params.end());
    return normalize(delta, types::apply(fp.functor, args), kStar);
  }

  CheckOptions options_;
  const TypeAbbrevs* abbrevs_;
};

}  // namespace

Typed TypeChecker::infer(const TypingContext& gamma, const Term& t) const {
  return Checker(options_, abbrevs_).infer(gamma, t);
}

Typed TypeChecker::check(const TypingContext& gamma, const Term& t, const Con& type) const {
  Checker checker(options_, abbrevs_);
  return checker.check(gamma, t, checker.elaborate_type(gamma, type));
}

Con TypeChecker::elaborate_type(const TypingContext& gamma, const Con& type) const {
  return Checker(options_, abbrevs_).elaborate_type(gamma, type);
}

}  // namespace fwh
