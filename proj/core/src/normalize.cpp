#include "fwh/normalize.hpp"

#include <stdexcept>

#include "fwh/kinding.hpp"

namespace fwh {

Con whnf(const Con& c) {
  Spine sp = spine_of(c);
  bool reduced = false;
  while (sp.head.tag() == Con::Tag::lam && !sp.args.empty()) {
    Con next = subst_constructor(sp.args.front(), sp.head.name(), sp.head.body());
    Spine inner = spine_of(next);
    inner.args.insert(inner.args.end(), sp.args.begin() + 1, sp.args.end());
    sp = std::move(inner);
    reduced = true;
  }
  return reduced ? types::apply(sp.head, sp.args) : c;
}

namespace {

bool is_succ_of_infinity(const Con& c) {
  return c.tag() == Con::Tag::app && c.fun().is_const(ConstName::succ) && c.arg().is_const(ConstName::infty);
}

std::string binder_base(const Kind& k) { return k.is_ord() ? "i" : "X"; }

Con nf(const KindContext& delta, const Con& c, const Kind& k);

Con nf_neutral(const KindContext& delta, const Con& c) {
  Spine sp = spine_of(whnf(c));
  Kind head_kind;
  switch (sp.head.tag()) {
    case Con::Tag::var: {
      const KindBinding* b = delta.lookup(sp.head.name());
      if (!b) throw std::logic_error("normalize: unbound variable " + sp.head.name());
      head_kind = b->kind;
      break;
    }
    case Con::Tag::constant: head_kind = const_kind(sp.head.const_name(), sp.head.index_kind()); break;
    default: throw std::logic_error("normalize: ill-kinded redex " + to_string(c));
  }
  std::vector<Con> args;
  args.reserve(sp.args.size());
  for (const Con& a : sp.args) {
    if (!head_kind.is_arrow()) throw std::logic_error("normalize: over-applied " + to_string(c));
    args.push_back(nf(delta, a, head_kind.domain()));
    head_kind = head_kind.codomain();
  }
  if (sp.head.is_const(ConstName::succ) && args.size() == 1 && args[0].is_const(ConstName::infty)) return args[0];
  return types::apply(sp.head, args);
}

Con nf(const KindContext& delta, const Con& c, const Kind& k) {
  if (!k.is_arrow()) return nf_neutral(delta, c);
  const Con head = whnf(c);
  auto taken = [&](const std::string& n) { return delta.binds(n) || occurs_free(n, head); };
  if (head.tag() == Con::Tag::lam) {
    const std::string x = fresh_name(head.name(), [&](const std::string& n) {
      return delta.binds(n) || (n != head.name() && occurs_free(n, head.body()));
    });
    Con body = rename_var(head.body(), head.name(), x);
    return Con::lam(x, k.domain(), nf(delta.extended(x, k.polarity(), k.domain()), body, k.codomain()));
  }
  const std::string x = fresh_name(binder_base(k.domain()), taken);
  Con applied = Con::app(head, Con::var(x));
  return Con::lam(x, k.domain(), nf(delta.extended(x, k.polarity(), k.domain()), applied, k.codomain()));
}

}  // namespace

Con normalize(const KindContext& delta, const Con& c, const Kind& k) { return nf(delta, c, k); }

bool constr_equal(const KindContext& delta, const Con& a, const Con& b, const Kind& k) {
  return alpha_eq(normalize(delta, a, k), normalize(delta, b, k));
}

Con beta_nf(const Con& c) {
  const Con h = whnf(c);
  switch (h.tag()) {
    case Con::Tag::constant:
    case Con::Tag::var: return h;
    case Con::Tag::lam: return Con::lam(h.name(), h.binder_kind(), beta_nf(h.body()));
    case Con::Tag::app: {
      Spine sp = spine_of(h);
      for (Con& a : sp.args) a = beta_nf(a);
      Con out = types::apply(sp.head, sp.args);
      return is_succ_of_infinity(out) ? out.arg() : out;
    }
  }
  return h;
}

Con OrdNF::to_con() const {
  Con out = base ? *base : types::infty();
  if (!base) return out;
  for (unsigned i = 0; i < offset; ++i) out = types::succ(std::move(out));
  return out;
}

OrdNF ord_nf(const Con& a) {
  OrdNF out;
  Con cur = a;
  while (cur.tag() == Con::Tag::app && cur.fun().is_const(ConstName::succ)) {
    ++out.offset;
    Con next = cur.arg();
    cur = std::move(next);
  }
  if (cur.is_const(ConstName::infty)) return OrdNF::infinity();
  out.base = cur;
  return out;
}

bool ord_same(const OrdNF& a, const OrdNF& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return a.offset == b.offset && alpha_eq(*a.base, *b.base);
}

bool ord_leq(const OrdNF& a, const OrdNF& b) {
  if (b.is_infinity()) return true;
  if (a.is_infinity()) return false;
  return alpha_eq(*a.base, *b.base) && a.offset <= b.offset;
}

}  // namespace fwh
