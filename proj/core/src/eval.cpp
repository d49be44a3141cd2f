#include "fwh/eval.hpp"

#include <algorithm>

#include "fwh/normalize.hpp"

namespace fwh {
namespace {

// Spine with annotations looked through.  `partial_types[m]` is the outermost annotation on the
// head applied to its first m arguments; `head_type` and `outer_type` are the two ends.
struct Viewed {
  Term head;
  std::optional<Con> head_type;
  std::optional<Con> outer_type;
  std::vector<SpineArg> args;  // type args of constant heads removed
  std::vector<Con> const_type_args;
  std::vector<std::optional<Con>> partial_types;
};

Viewed view(const Term& t) {
  std::vector<SpineArg> rev;
  std::vector<std::pair<std::size_t, Con>> annos;  // (arguments peeled so far, type)
  Term cur = t;
  for (;;) {
    if (cur.tag() == Term::Tag::app) {
      rev.push_back(SpineArg{false, cur.arg(), std::nullopt});
      cur = cur.fun();
    } else if (cur.tag() == Term::Tag::ty_app) {
      rev.push_back(SpineArg{true, std::nullopt, *cur.type()});
      cur = cur.fun();
    } else if (cur.tag() == Term::Tag::anno) {
      annos.emplace_back(rev.size(), *cur.type());
      cur = cur.inner();
    } else {
      break;
    }
  }
  std::reverse(rev.begin(), rev.end());
  const bool drop_types = cur.tag() == Term::Tag::constant;
  // Position of each raw prefix length after dropping constant type args.
  std::vector<std::size_t> kept(rev.size() + 1, 0);
  for (std::size_t k = 0; k < rev.size(); ++k) kept[k + 1] = kept[k] + ((drop_types && rev[k].is_type) ? 0 : 1);
  Viewed v{cur, {}, {}, {}, {}, {}};
  for (auto& a : rev) {
    if (drop_types && a.is_type)
      v.const_type_args.push_back(*a.type);
    else
      v.args.push_back(std::move(a));
  }
  v.partial_types.resize(v.args.size() + 1);
  for (const auto& [peeled, type] : annos) {
    auto& slot = v.partial_types[kept[rev.size() - peeled]];
    if (!slot) slot = type;
  }
  v.head_type = v.partial_types.front();
  v.outer_type = v.partial_types.back();
  return v;
}

Term annotate(Term t, const std::optional<Con>& type) {
  if (!type) return t;
  Span sp = t.span();
  return Term::anno(std::move(t), *type, sp);
}

// Reapplies the arguments of v from `from` on, restoring the annotations on partial applications.
Term respine(Term t, const Viewed& v, std::size_t from) {
  if (from < v.partial_types.size() && from > 0) t = annotate(std::move(t), v.partial_types[from]);
  for (std::size_t k = from; k < v.args.size(); ++k) {
    const SpineArg& a = v.args[k];
    t = a.is_type ? Term::ty_app(std::move(t), *a.type) : Term::app(std::move(t), *a.term);
    t = annotate(std::move(t), v.partial_types[k + 1]);
  }
  return t;
}

std::size_t term_arg_count(const std::vector<SpineArg>& args, std::size_t from = 0) {
  return static_cast<std::size_t>(
      std::count_if(args.begin() + static_cast<std::ptrdiff_t>(from), args.end(), [](const SpineArg& a) { return !a.is_type; }));
}

// Index of the k-th (0-based) term argument at or after `from`.
std::optional<std::size_t> term_arg_index(const std::vector<SpineArg>& args, std::size_t k, std::size_t from = 0) {
  for (std::size_t i = from; i < args.size(); ++i) {
    if (args[i].is_type) continue;
    if (k == 0) return i;
    --k;
  }
  return std::nullopt;
}

Con predecessor(const Con& a) {
  OrdNF n = ord_nf(beta_nf(a));
  if (n.is_infinity()) return types::infty();
  if (n.offset > 0) {
    --n.offset;
    return n.to_con();
  }
  return a;
}

bool is_unary_const(const Viewed& v, TermConst c) { return v.head.is_const(c) && v.args.size() == 1; }

std::optional<Con> prod_component(const Con& type, bool first) {
  Spine sp = spine_of(beta_nf(type));
  if (sp.head.is_const(ConstName::prod) && sp.args.size() == 2) return sp.args[first ? 0 : 1];
  return std::nullopt;
}

std::optional<Con> unfolded(const Con& type) {
  Spine sp = spine_of(beta_nf(type));
  if (!(sp.head.is_const(ConstName::mu) || sp.head.is_const(ConstName::nu)) || sp.args.size() < 2) return std::nullopt;
  Con smaller = Con::app(Con::app(sp.head, predecessor(sp.args[0])), sp.args[1]);
  std::vector<Con> args{smaller};
  args.insert(args.end(), sp.args.begin() + 2, sp.args.end());
  return beta_nf(types::apply(sp.args[1], args));
}

// fix s t.. with its size argument, split into the pieces the unrolling needs.
struct FixCall {
  Term fix;
  std::optional<Con> size;
  std::size_t first_rest;  // first spine argument after the size
};

FixCall fix_call(const Viewed& v) {
  if (!v.args.empty() && v.args[0].is_type) return FixCall{v.head, v.args[0].type, 1};
  return FixCall{v.head, std::nullopt, 0};
}

// s (fix s) with sizes instantiated at the predecessor.
Term unrolled(const FixCall& call) {
  Term s = call.fix.functional();
  Term self = call.fix;
  std::optional<Con> type;
  if (call.size) {
    Con smaller = predecessor(*call.size);
    s = Term::ty_app(s, smaller);
    self = Term::ty_app(self, smaller);
    if (call.fix.type()) type = beta_nf(Con::app(*call.fix.type(), types::succ(smaller)));
  }
  return annotate(Term::app(s, self), type);
}

std::optional<Term> contract_lam(const Viewed& v) {
  if (v.args.empty() || v.args[0].is_type) return std::nullopt;
  const Term& lam = v.head;
  std::optional<Con> dom = lam.type();
  std::optional<Con> cod;
  if (v.head_type) {
    if (auto arrow = [&]() -> std::optional<std::pair<Con, Con>> {
          Spine sp = spine_of(beta_nf(*v.head_type));
          if (sp.head.is_const(ConstName::arrow) && sp.args.size() == 2) return std::pair{sp.args[0], sp.args[1]};
          return std::nullopt;
        }()) {
      if (!dom) dom = arrow->first;
      cod = arrow->second;
    }
  }
  Term body = subst_term(annotate(*v.args[0].term, dom), lam.name(), lam.body());
  return respine(annotate(std::move(body), cod), v, 1);
}

std::optional<Term> contract_ty_lam(const Viewed& v) {
  if (v.args.empty() || !v.args[0].is_type) return std::nullopt;
  const Con& g = *v.args[0].type;
  Term body = subst_type_in_term(g, v.head.name(), v.head.body());
  std::optional<Con> result;
  if (v.head_type) {
    Spine sp = spine_of(beta_nf(*v.head_type));
    if (sp.head.is_const(ConstName::forall) && sp.args.size() == 1 && sp.args[0].tag() == Con::Tag::lam)
      result = subst_constructor(g, sp.args[0].name(), sp.args[0].body());
  }
  return respine(annotate(std::move(body), result), v, 1);
}

std::optional<Term> contract_projection(const Viewed& v, bool first) {
  Viewed p = view(*v.args[0].term);
  if (!p.head.is_const(TermConst::pair) || p.args.size() != 2) return std::nullopt;
  std::optional<Con> type;
  if (p.outer_type) type = prod_component(*p.outer_type, first);
  if (!type && p.const_type_args.size() == 2) type = p.const_type_args[first ? 0 : 1];
  return respine(annotate(*p.args[first ? 0 : 1].term, type), v, 1);
}

std::optional<Term> contract_case(const Viewed& v) {
  Viewed p = view(*v.args[0].term);
  if (!(is_unary_const(p, TermConst::inl) || is_unary_const(p, TermConst::inr))) return std::nullopt;
  const Term& r = *p.args[0].term;
  auto taken_r = free_term_vars(r);
  auto taken = [&](const std::string& n) { return taken_r.count(n) > 0; };
  std::string x = fresh_name("x", taken);
  std::string y = fresh_name("y", [&](const std::string& n) { return taken(n) || n == x; });
  bool left = p.head.is_const(TermConst::inl);
  Term chosen = Term::var(left ? x : y);
  Term result = Term::lam(x, std::nullopt, Term::lam(y, std::nullopt, Term::app(chosen, r)));
  return respine(result, v, 1);
}

std::optional<Term> contract_out(const Viewed& v) {
  Viewed p = view(*v.args[0].term);
  if (is_unary_const(p, TermConst::in)) {
    std::optional<Con> type;
    if (p.outer_type) type = unfolded(*p.outer_type);
    return respine(annotate(*p.args[0].term, type), v, 1);
  }
  if (p.head.tag() == Term::Tag::fix && p.head.flavor() == Flavor::nu) {
    FixCall call = fix_call(p);
    if (term_arg_count(p.args, call.first_rest) != p.head.arity()) return std::nullopt;
    Term inner = respine(unrolled(call), p, call.first_rest);
    return respine(Term::app(Term::constant(TermConst::out), inner), v, 1);
  }
  return std::nullopt;
}

std::optional<Term> contract_fix_mu(const Viewed& v) {
  FixCall call = fix_call(v);
  auto idx = term_arg_index(v.args, v.head.arity(), call.first_rest);
  if (!idx) return std::nullopt;
  Viewed w = view(*v.args[*idx].term);
  if (!is_unary_const(w, TermConst::in)) return std::nullopt;
  return respine(unrolled(call), v, call.first_rest);
}

std::optional<Term> contract_view(const Viewed& v) {
  switch (v.head.tag()) {
    case Term::Tag::lam: return contract_lam(v);
    case Term::Tag::ty_lam: return contract_ty_lam(v);
    case Term::Tag::fix:
      if (v.head.flavor() == Flavor::mu) return contract_fix_mu(v);
      return std::nullopt;
    case Term::Tag::constant:
      if (v.args.empty()) return std::nullopt;
      switch (v.head.const_value()) {
        case TermConst::fst: return contract_projection(v, true);
        case TermConst::snd: return contract_projection(v, false);
        case TermConst::case_of: return contract_case(v);
        case TermConst::out: return contract_out(v);
        default: return std::nullopt;
      }
    default: return std::nullopt;
  }
}

StepResult make(StepKind k, std::string detail = {}) { return StepResult{k, std::nullopt, std::move(detail)}; }

// Classification of the scrutinee of an eliminator: neutral propagates, a value of the wrong
// shape is junk.
StepResult eliminated(const Term& scrutinee, const std::string& what) {
  StepResult r = classify(scrutinee);
  if (r.kind == StepKind::neutral || r.kind == StepKind::stuck) return r;
  return make(StepKind::stuck, what + " applied to " + to_string(erase(scrutinee)));
}

bool within(const Term& t, std::size_t fuel) { return normalize_term(t, fuel).normal; }

std::optional<Term> reduce_inside(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: return std::nullopt;
    case Term::Tag::lam:
      if (auto b = step(t.body()); b.term) return Term::lam(t.name(), t.type(), *b.term, t.span());
      return std::nullopt;
    case Term::Tag::ty_lam:
      if (auto b = step(t.body()); b.term) return Term::ty_lam(t.name(), t.kind(), *b.term, t.span());
      return std::nullopt;
    case Term::Tag::anno:
      if (auto b = step(t.inner()); b.term) return Term::anno(*b.term, *t.type(), t.span());
      return std::nullopt;
    case Term::Tag::fix:
      if (auto b = step(t.functional()); b.term)
        return Term::fix(t.flavor(), t.arity(), t.type(), *b.term, t.span());
      return std::nullopt;
    case Term::Tag::ty_app:
      if (auto f = step(t.fun()); f.term) return Term::ty_app(*f.term, *t.type(), t.span());
      return std::nullopt;
    case Term::Tag::app:
      if (auto f = step(t.fun()); f.term) return Term::app(*f.term, t.arg(), t.span());
      if (auto a = step(t.arg()); a.term) return Term::app(t.fun(), *a.term, t.span());
      return std::nullopt;
  }
  return std::nullopt;
}

void collect_reducts(const Term& t, std::vector<Term>& out) {
  if (auto r = contract(t)) out.push_back(*r);
  auto wrap = [&](const Term& child, auto&& rebuild_with) {
    std::vector<Term> inner;
    collect_reducts(child, inner);
    for (auto& r : inner) out.push_back(rebuild_with(r));
  };
  switch (t.tag()) {
    case Term::Tag::var:
    case Term::Tag::constant: break;
    case Term::Tag::lam: wrap(t.body(), [&](const Term& b) { return Term::lam(t.name(), t.type(), b, t.span()); }); break;
    case Term::Tag::ty_lam: wrap(t.body(), [&](const Term& b) { return Term::ty_lam(t.name(), t.kind(), b, t.span()); }); break;
    case Term::Tag::anno: wrap(t.inner(), [&](const Term& b) { return Term::anno(b, *t.type(), t.span()); }); break;
    case Term::Tag::fix:
      wrap(t.functional(), [&](const Term& b) { return Term::fix(t.flavor(), t.arity(), t.type(), b, t.span()); });
      break;
    case Term::Tag::ty_app: wrap(t.fun(), [&](const Term& b) { return Term::ty_app(b, *t.type(), t.span()); }); break;
    case Term::Tag::app:
      wrap(t.fun(), [&](const Term& b) { return Term::app(b, t.arg(), t.span()); });
      wrap(t.arg(), [&](const Term& b) { return Term::app(t.fun(), b, t.span()); });
      break;
  }
}

// Replaces the term argument that is `from_right` positions from the end of the spine.
Term replace_term_arg(const Term& t, std::size_t from_right, const Term& replacement) {
  switch (t.tag()) {
    case Term::Tag::app:
      if (from_right == 0) return Term::app(t.fun(), replacement, t.span());
      return Term::app(replace_term_arg(t.fun(), from_right - 1, replacement), t.arg(), t.span());
    case Term::Tag::ty_app: return Term::ty_app(replace_term_arg(t.fun(), from_right, replacement), *t.type(), t.span());
    case Term::Tag::anno: return Term::anno(replace_term_arg(t.inner(), from_right, replacement), *t.type(), t.span());
    default: return t;
  }
}

// Position of the safe evaluation hole in a spine, if any.
std::optional<std::size_t> safe_hole(const Viewed& v) {
  if (v.head.tag() == Term::Tag::constant) {
    switch (v.head.const_value()) {
      case TermConst::fst:
      case TermConst::snd:
      case TermConst::case_of:
      case TermConst::out:
        if (!v.args.empty()) return 0;
        return std::nullopt;
      default: return std::nullopt;
    }
  }
  if (v.head.tag() == Term::Tag::fix && v.head.flavor() == Flavor::mu)
    return term_arg_index(v.args, v.head.arity(), fix_call(v).first_rest);
  return std::nullopt;
}

// Root safe contraction with its side condition.
std::optional<Term> safe_contract(const Viewed& v, std::size_t sn_fuel) {
  if (v.head.tag() == Term::Tag::lam) {
    if (v.args.empty() || v.args[0].is_type || !within(*v.args[0].term, sn_fuel)) return std::nullopt;
    return contract_view(v);
  }
  if (v.head.is_const(TermConst::fst) || v.head.is_const(TermConst::snd)) {
    if (v.args.empty()) return std::nullopt;
    Viewed p = view(*v.args[0].term);
    if (!p.head.is_const(TermConst::pair) || p.args.size() != 2) return std::nullopt;
    const Term& discarded = *p.args[v.head.is_const(TermConst::fst) ? 1 : 0].term;
    if (!within(discarded, sn_fuel)) return std::nullopt;
    return contract_view(v);
  }
  if (v.head.tag() == Term::Tag::ty_lam) return std::nullopt;
  return contract_view(v);
}

}  // namespace

std::optional<Term> contract(const Term& t) {
  Viewed v = view(t);
  return contract_view(v);
}

StepResult classify(const Term& t) {
  Viewed v = view(t);
  const Term& h = v.head;
  switch (h.tag()) {
    case Term::Tag::var:
      return make(StepKind::neutral, h.name());
    case Term::Tag::lam:
      if (v.args.empty()) return make(StepKind::value);
      return make(StepKind::stuck, "term abstraction applied to a type");
    case Term::Tag::ty_lam:
      if (v.args.empty()) return make(StepKind::value);
      return make(StepKind::stuck, "type abstraction applied to a term");
    case Term::Tag::fix: {
      std::size_t n = h.arity();
      FixCall call = fix_call(v);
      std::size_t m = term_arg_count(v.args, call.first_rest);
      if (h.flavor() == Flavor::nu) {
        if (m <= n) return make(StepKind::value);
        return make(StepKind::stuck, "coinductive fixpoint applied past its arity");
      }
      if (m <= n) return make(StepKind::value);
      return eliminated(*v.args[*term_arg_index(v.args, n, call.first_rest)].term, "inductive fixpoint");
    }
    case Term::Tag::constant: {
      std::size_t m = v.args.size();
      switch (h.const_value()) {
        case TermConst::unit:
          if (m == 0) return make(StepKind::value);
          return make(StepKind::stuck, "unit applied");
        case TermConst::pair:
          if (m <= 2) return make(StepKind::value);
          return make(StepKind::stuck, "pair applied");
        case TermConst::inl:
        case TermConst::inr:
        case TermConst::in:
          if (m <= 1) return make(StepKind::value);
          return make(StepKind::stuck, std::string(to_string(h.const_value())) + " applied");
        case TermConst::fst:
        case TermConst::snd:
        case TermConst::case_of:
        case TermConst::out:
          if (m == 0) return make(StepKind::value);
          return eliminated(*v.args[0].term, std::string(to_string(h.const_value())));
      }
      break;
    }
    default: break;
  }
  return make(StepKind::stuck, "unexpected term");
}

StepResult step(const Term& t) {
  if (auto r = contract(t)) return StepResult{StepKind::stepped, std::move(r), {}};
  if (auto r = reduce_inside(t)) return StepResult{StepKind::stepped, std::move(r), {}};
  return classify(t);
}

NormalizeOutcome normalize_term(const Term& t, std::size_t fuel) {
  Term cur = t;
  for (std::size_t n = 0; n < fuel; ++n) {
    StepResult r = step(cur);
    if (!r.term) return NormalizeOutcome{true, cur, n};
    cur = *r.term;
  }
  if (!step(cur).term) return NormalizeOutcome{true, cur, fuel};
  return NormalizeOutcome{false, cur, fuel};
}

std::optional<Term> safe_step(const Term& t, std::size_t sn_fuel) {
  Viewed v = view(t);
  if (auto r = safe_contract(v, sn_fuel)) return r;
  auto hole = safe_hole(v);
  if (!hole) return std::nullopt;
  auto inner = safe_step(*v.args[*hole].term, sn_fuel);
  if (!inner) return std::nullopt;
  std::size_t k = term_arg_count(v.args) - term_arg_count(v.args, *hole);
  return replace_term_arg(t, term_arg_count(v.args) - 1 - k, *inner);
}

std::size_t safe_axioms_matching(const Term& t, std::size_t sn_fuel) {
  Viewed v = view(t);
  std::size_t count = 0;
  if (safe_contract(v, sn_fuel)) ++count;
  // A second axiom could only match through the out/fixnu overlap.
  if (v.head.is_const(TermConst::out) && !v.args.empty()) {
    Viewed p = view(*v.args[0].term);
    bool in_redex = is_unary_const(p, TermConst::in);
    bool fix_redex = p.head.tag() == Term::Tag::fix && p.head.flavor() == Flavor::nu &&
                     term_arg_count(p.args, fix_call(p).first_rest) == p.head.arity();
    if (in_redex && fix_redex) ++count;
  }
  return count;
}

std::vector<Term> all_reducts(const Term& t) {
  std::vector<Term> out;
  collect_reducts(t, out);
  return out;
}

}  // namespace fwh
