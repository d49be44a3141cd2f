#include "fwh/subtype.hpp"

#include "fwh/kinding.hpp"
#include "fwh/normalize.hpp"

namespace fwh {

namespace {

std::string leq_text(const Con& a, const Con& b, const Kind& k) {
  return to_string(a) + " <= " + to_string(b) + " : " + to_string(k);
}

Outcome ord_subtype(const Con& a, const Con& b) {
  const OrdNF x = ord_nf(a);
  const OrdNF y = ord_nf(b);
  const std::string text = leq_text(a, b, Kind::ord());
  if (ord_same(x, y)) return Derivation{"leq-refl", text, {}};
  if (y.is_infinity()) return Derivation{"leq-inf", text, {}};
  if (!ord_leq(x, y)) return Failure{"leq-ord", to_string(a) + " is not below " + to_string(b), {}};
  // a <= s a chained by transitivity.
  std::vector<Derivation> steps;
  OrdNF cur = x;
  while (cur.offset < y.offset) {
    OrdNF next = cur;
    ++next.offset;
    steps.push_back(Derivation{"leq-s-r", leq_text(cur.to_con(), next.to_con(), Kind::ord()), {}});
    cur = next;
  }
  if (steps.size() == 1) return std::move(steps.front());
  return Derivation{"trans", text, std::move(steps)};
}

Outcome neutral_subtype(const KindContext& delta, const Con& a, const Con& b) {
  const Spine sa = spine_of(a);
  const Spine sb = spine_of(b);
  const bool same_head =
      sa.head.tag() == sb.head.tag() && sa.args.size() == sb.args.size() &&
      ((sa.head.tag() == Con::Tag::var && sa.head.name() == sb.head.name()) ||
       (sa.head.tag() == Con::Tag::constant && sa.head.const_name() == sb.head.const_name() &&
        sa.head.index_kind() == sb.head.index_kind()));
  if (!same_head)
    return Failure{"leq-app", "head mismatch: " + to_string(a) + " vs " + to_string(b), {}};

  Kind head_kind = sa.head.tag() == Con::Tag::var ? delta.lookup(sa.head.name())->kind
                                                  : const_kind(sa.head.const_name(), sa.head.index_kind());
  Con left = sa.head;
  Con right = sb.head;
  Derivation acc{"leq-refl", leq_text(left, right, head_kind), {}};
  for (std::size_t i = 0; i < sa.args.size(); ++i) {
    const Polarity p = head_kind.polarity();
    const Kind& dom = head_kind.domain();
    const Kind cod = head_kind.codomain();
    const Con& x = sa.args[i];
    const Con& y = sb.args[i];
    const KindContext arg_delta = invert_context(p, delta);
    std::string rule;
    Outcome arg = Failure{};
    switch (p) {
      case Polarity::plus:
        rule = "leq-app+";
        arg = subtype_normal(arg_delta, x, y, dom);
        break;
      case Polarity::minus:
        rule = "leq-app-";
        arg = subtype_normal(arg_delta, y, x, dom);
        break;
      case Polarity::mixed:
        rule = "leq-app";
        if (alpha_eq(x, y)) {
          arg = Derivation{"eq-refl", to_string(x) + " = " + to_string(y) + " : " + to_string(dom), {}};
        } else {
          arg = Failure{"leq-app", "mixed argument differs: " + to_string(x) + " vs " + to_string(y), {}};
        }
        break;
    }
    if (!arg) {
      Failure f = std::move(arg).take_failure();
      return Failure{rule, "argument " + std::to_string(i + 1) + " of " + to_string(sa.head) + " fails", {std::move(f)}};
    }
    left = Con::app(left, x);
    right = Con::app(right, y);
    acc = Derivation{rule, leq_text(left, right, cod), {std::move(acc), std::move(arg).take_derivation()}};
    head_kind = cod;
  }
  return acc;
}

}  // namespace

Outcome subtype_normal(const KindContext& delta, const Con& a, const Con& b, const Kind& k) {
  if (k.is_arrow()) {
    if (a.tag() != Con::Tag::lam || b.tag() != Con::Tag::lam)
      return Failure{"leq-lambda", "expected eta-long forms at " + to_string(k), {}};
    const std::string& x = a.name();
    const Con b_body = rename_var(b.body(), b.name(), x);
    Outcome body = subtype_normal(delta.extended(x, k.polarity(), k.domain()), a.body(), b_body, k.codomain());
    if (!body)
      return Failure{"leq-lambda", "under binder " + x, {std::move(body).take_failure()}};
    return Derivation{"leq-lambda", leq_text(a, b, k), {std::move(body).take_derivation()}};
  }
  if (k.is_ord()) return ord_subtype(a, b);
  return neutral_subtype(delta, a, b);
}

Outcome subtype(const KindContext& delta, const Con& a, const Con& b, const Kind& k) {
  return subtype_normal(delta, normalize(delta, a, k), normalize(delta, b, k), k);
}

}  // namespace fwh
