#include "fwh/continuity.hpp"

#include "fwh/kinding.hpp"
#include "fwh/normalize.hpp"

namespace fwh {

std::string_view to_string(ContFlag q) noexcept { return q == ContFlag::upper ? "⊕" : "⊖"; }

Outcome ord_pure_derivation(const KindContext& delta, const Con& a) {
  if (a.is_const(ConstName::infty)) return Derivation{"ord-inf", "oo ord", {}};
  if (a.tag() == Con::Tag::var) {
    const KindBinding* b = delta.lookup(a.name());
    if (b && b->kind.is_ord() && polarity_leq(b->polarity, Polarity::plus))
      return Derivation{"ord-var", a.name() + " ord", {}};
    return Failure{"ord-var", a.name() + " is not an ordinal variable at polarity + or o", {}};
  }
  if (a.tag() == Con::Tag::app && a.fun().is_const(ConstName::succ)) {
    Outcome inner = ord_pure_derivation(delta, a.arg());
    if (!inner) return Failure{"ord-s", "under successor", {std::move(inner).take_failure()}};
    return Derivation{"ord-s", to_string(a) + " ord", {std::move(inner).take_derivation()}};
  }
  return Failure{"ord-var", to_string(a) + " is not a pure ordinal expression", {}};
}

bool ord_pure(const KindContext& delta, const Con& a) { return ord_pure_derivation(delta, a).ok(); }

namespace {

class ContChecker {
 public:
  ContChecker(std::string iota) : iota_(std::move(iota)) {}

  // c is in normal form at k under delta, pi.
  Outcome check(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Con& c, const Kind& k) {
    if (k.is_arrow()) {
      Outcome structural = check_abs(delta, pi, q, c, k);
      if (structural) return structural;
      return with_fallbacks(delta, pi, q, c, k, std::move(structural).take_failure());
    }
    const Spine sp = spine_of(c);
    return check_prefix(delta, pi, q, sp, sp.args.size());
  }

 private:
  std::string conclusion(ContFlag q, const Con& c, const Kind& k) const {
    return iota_ + std::string(to_string(q)) + " |- " + to_string(c) + " : " + to_string(k);
  }

  Outcome check_abs(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Con& c, const Kind& k) {
    if (c.tag() != Con::Tag::lam) return Failure{"cont-abs", "expected an abstraction at " + to_string(k), {}};
    if (c.name() == iota_) return Failure{"cont-abs", "binder shadows " + iota_, {}};
    Outcome body = check(delta.extended(c.name(), k.polarity(), k.domain()), pi, q, c.body(), k.codomain());
    if (!body) return Failure{"cont-abs", "body of " + to_string(c), {std::move(body).take_failure()}};
    return Derivation{"cont-abs", conclusion(q, c, k), {std::move(body).take_derivation()}};
  }

  static Kind head_kind(const KindContext& delta, const StrictPosContext& pi, const Con& head) {
    if (head.tag() == Con::Tag::constant) return const_kind(head.const_name(), head.index_kind());
    if (const KindBinding* b = delta.lookup(head.name())) return b->kind;
    for (auto it = pi.rbegin(); it != pi.rend(); ++it)
      if (it->name == head.name()) return it->kind;
    throw std::logic_error("semicont: unbound head " + head.name());
  }

  static Kind prefix_kind(Kind k, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) k = k.codomain();
    return k;
  }

  // Arguments may use everything except iota; pi variables count as +.
  KindContext argument_context(const KindContext& delta, const StrictPosContext& pi, Polarity p) const {
    KindContext ctx = delta.without(iota_);
    for (const auto& b : pi) ctx.push(b.name, Polarity::plus, b.kind);
    return invert_context(p, ctx);
  }

  // Structural rule for head applied to the first m arguments, then the fallbacks.
  Outcome check_prefix(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                       std::size_t m) {
    const Con prefix = types::apply(sp.head, std::span<const Con>(sp.args.data(), m));
    const Kind k = prefix_kind(head_kind(delta, pi, sp.head), m);
    Outcome structural = structural_prefix(delta, pi, q, sp, m, prefix, k);
    if (structural) return structural;
    return with_fallbacks(delta, pi, q, prefix, k, std::move(structural).take_failure());
  }

  Outcome structural_prefix(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                            std::size_t m, const Con& prefix, const Kind& k) {
    const Con& h = sp.head;
    if (h.tag() == Con::Tag::constant) {
      switch (h.const_name()) {
        case ConstName::sum:
        case ConstName::prod:
          if (m == 2) return check_binary(delta, pi, q, sp, prefix, h.is_const(ConstName::sum) ? "cont-sum" : "cont-prod");
          break;
        case ConstName::arrow:
          if (m == 2) return check_arrow(delta, pi, q, sp, prefix);
          break;
        case ConstName::forall:
          if (m == 1) return check_forall(delta, pi, q, sp, prefix);
          break;
        case ConstName::mu:
        case ConstName::nu:
          if (m == 2) return check_fixpoint(delta, pi, q, sp, prefix, k);
          if (m > 2) return check_app(delta, pi, q, sp, m, prefix, k);
          break;
        default: break;
      }
      if (m == 0) return check_in(delta, q, prefix, k, "cont-in");
      return check_app(delta, pi, q, sp, m, prefix, k);
    }
    if (m == 0) return check_var(delta, pi, q, h, k);
    return check_app(delta, pi, q, sp, m, prefix, k);
  }

  Outcome check_app(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp, std::size_t m,
                    const Con& prefix, const Kind& k) {
    Outcome fun = check_prefix(delta, pi, q, sp, m - 1);
    if (!fun) return Failure{"cont-app", "function part of " + to_string(prefix), {std::move(fun).take_failure()}};
    const Kind fk = prefix_kind(head_kind(delta, pi, sp.head), m - 1);
    const Con& arg = sp.args[m - 1];
    if (!kinds_to(argument_context(delta, pi, fk.polarity()), arg, fk.domain()))
      return Failure{"cont-app",
                     "argument " + to_string(arg) + " must not depend on " + iota_ + " (or occurs at the wrong polarity)",
                     {}};
    Derivation kinding{"kind", to_string(arg) + " : " + to_string(fk.domain()), {}};
    return Derivation{"cont-app", conclusion(q, prefix, k), {std::move(fun).take_derivation(), std::move(kinding)}};
  }

  Outcome check_var(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Con& x, const Kind& k) {
    if (const KindBinding* b = delta.lookup(x.name())) {
      if (polarity_leq(b->polarity, Polarity::plus)) return Derivation{"cont-var", conclusion(q, x, k), {}};
      return Failure{"cont-var", x.name() + " is bound at polarity " + std::string(to_string(b->polarity)), {}};
    }
    for (const auto& b : pi)
      if (b.name == x.name()) return Derivation{"cont-var", conclusion(q, x, k), {}};
    return Failure{"cont-var", x.name() + " is not bound", {}};
  }

  Outcome check_binary(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                       const Con& prefix, const char* rule) {
    const Kind star = Kind::star();
    Outcome left = check(delta, pi, q, sp.args[0], star);
    if (!left) return Failure{rule, "left component of " + to_string(prefix), {std::move(left).take_failure()}};
    Outcome right = check(delta, pi, q, sp.args[1], star);
    if (!right) return Failure{rule, "right component of " + to_string(prefix), {std::move(right).take_failure()}};
    return Derivation{rule, conclusion(q, prefix, star),
                      {std::move(left).take_derivation(), std::move(right).take_derivation()}};
  }

  Outcome check_arrow(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                      const Con& prefix) {
    const Kind star = Kind::star();
    if (q != ContFlag::upper) return Failure{"cont-arr", "function types are only derivable at ⊕", {}};
    Outcome dom = check(invert_context(Polarity::minus, delta), {}, ContFlag::lower, sp.args[0], star);
    if (!dom)
      return Failure{"cont-arr", "domain not ⊖: " + to_string(sp.args[0]), {std::move(dom).take_failure()}};
    Outcome cod = check(delta, pi, ContFlag::upper, sp.args[1], star);
    if (!cod)
      return Failure{"cont-arr", "codomain not ⊕: " + to_string(sp.args[1]), {std::move(cod).take_failure()}};
    return Derivation{"cont-arr", conclusion(q, prefix, star),
                      {std::move(dom).take_derivation(), std::move(cod).take_derivation()}};
  }

  Outcome check_forall(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                       const Con& prefix) {
    if (q != ContFlag::upper) return Failure{"cont-forall", "quantified types are only derivable at ⊕", {}};
    const Kind body_kind = Kind::arrow(Polarity::mixed, sp.head.index_kind().value(), Kind::star());
    Outcome body = check(delta, pi, q, sp.args[0], body_kind);
    if (!body) return Failure{"cont-forall", "body of " + to_string(prefix), {std::move(body).take_failure()}};
    return Derivation{"cont-forall", conclusion(q, prefix, Kind::star()), {std::move(body).take_derivation()}};
  }

  Outcome check_fixpoint(const KindContext& delta, const StrictPosContext& pi, ContFlag q, const Spine& sp,
                         const Con& prefix, const Kind& k) {
    const bool inductive = sp.head.is_const(ConstName::mu);
    const char* rule = inductive ? "cont-mu" : "cont-nu";
    const ContFlag required = inductive ? ContFlag::lower : ContFlag::upper;
    if (q != required)
      return Failure{rule, std::string(inductive ? "inductive" : "coinductive") + " types are only derivable at " +
                               std::string(to_string(required)),
                     {}};
    const Con& size = sp.args[0];
    const Con& fn = sp.args[1];
    Derivation size_premise;
    if (inductive) {
      const bool size_ok = (size.tag() == Con::Tag::var && size.name() == iota_) || !occurs_free(iota_, size);
      if (!size_ok) return Failure{rule, "size " + to_string(size) + " is neither " + iota_ + " nor free of it", {}};
      if (!kinds_to(delta, size, Kind::ord()))
        return Failure{rule, "size " + to_string(size) + " is not an ordinal here", {}};
      size_premise = Derivation{"kind", to_string(size) + " : ord", {}};
    } else {
      Outcome pure = ord_pure_derivation(delta, size);
      if (!pure) return Failure{rule, "size " + to_string(size) + " is not a pure ordinal", {std::move(pure).take_failure()}};
      size_premise = std::move(pure).take_derivation();
    }
    if (fn.tag() != Con::Tag::lam) return Failure{rule, "functor is not an abstraction", {}};
    StrictPosContext inner = pi;
    inner.push_back(PositiveBinding{fn.name(), k});
    Outcome body = check(delta, inner, q, fn.body(), k);
    if (!body) return Failure{rule, "body of " + to_string(prefix), {std::move(body).take_failure()}};
    return Derivation{rule, conclusion(q, prefix, k), {std::move(body).take_derivation(), std::move(size_premise)}};
  }

  Outcome check_in(const KindContext& delta, ContFlag q, const Con& c, const Kind& k, const char* rule) {
    if (!kinds_to(delta.without(iota_), c, k))
      return Failure{rule, to_string(c) + " depends on " + iota_ + " or on a strictly positive variable", {}};
    return Derivation{rule, conclusion(q, c, k), {}};
  }

  Outcome with_fallbacks(const KindContext& delta, const StrictPosContext&, ContFlag q, const Con& c, const Kind& k,
                         Failure structural) {
    std::vector<Failure> attempts;
    attempts.push_back(std::move(structural));
    Outcome in = check_in(delta, q, c, k, "cont-in");
    if (in) return in;
    attempts.push_back(std::move(in).take_failure());

    const KindBinding* b = delta.lookup(iota_);
    const Polarity bound = b ? b->polarity : Polarity::mixed;
    const bool upper = q == ContFlag::upper;
    const char* rule = upper ? "cont-co" : "cont-contra";
    const Polarity needed = upper ? Polarity::plus : Polarity::minus;
    if (!polarity_leq(bound, needed)) {
      attempts.push_back(Failure{rule, iota_ + " is bound at polarity " + std::string(to_string(bound)), {}});
    } else if (kinds_to(delta.without(iota_).extended(iota_, needed, Kind::ord()), c, k)) {
      return Derivation{rule, conclusion(q, c, k), {Derivation{"kind", to_string(c) + " : " + to_string(k), {}}}};
    } else {
      attempts.push_back(Failure{rule,
                                 to_string(c) + " is not " + (upper ? "monotone" : "antitone") + " in " + iota_ +
                                     " without strictly positive variables",
                                 {}});
    }
    Failure top = std::move(attempts.front());
    std::vector<Failure> rest(std::make_move_iterator(attempts.begin() + 1), std::make_move_iterator(attempts.end()));
    for (auto& r : rest) top.causes.push_back(std::move(r));
    return top;
  }

  std::string iota_;
};

}  // namespace

Outcome semicont_check(const KindContext& delta, const StrictPosContext& pi, const std::string& iota, ContFlag q,
                       const Con& c, const Kind& k) {
  KindContext full = delta;
  for (const auto& b : pi) full.push(b.name, Polarity::plus, b.kind);
  const Con normal = normalize(full, c, k);
  return ContChecker(iota).check(delta, pi, q, normal, k);
}

namespace {

[[noreturn]] void shape_error(std::string message, const Outcome& continuity) {
  Failure f{"admissibility", std::move(message), {}};
  if (!continuity) f.causes.push_back(continuity.failure());
  throw Error(Judgement::admissibility, "ShapeMismatch", std::move(f));
}

bool is_size(const Con& c, const std::string& iota) { return c.tag() == Con::Tag::var && c.name() == iota; }

}  // namespace

AdmissibleShape admissible(const KindContext& delta, const Con& motive, Flavor flavor, unsigned n) {
  const std::string iota = fresh_name("i", [&](const std::string& x) { return delta.binds(x) || occurs_free(x, motive); });
  KindContext ctx = delta.extended(iota, Polarity::mixed, Kind::ord());
  const Kind star = Kind::star();
  const Con matrix = normalize(ctx, Con::app(motive, Con::var(iota)), star);

  Outcome continuity = semicont_check(ctx, {}, iota, ContFlag::upper, matrix, star);

  AdmissibleShape shape;
  shape.flavor = flavor;
  shape.size_var = iota;
  shape.matrix = matrix;

  Con cur = matrix;
  for (;;) {
    Spine sp = spine_of(cur);
    if (!sp.head.is_const(ConstName::forall) || sp.args.size() != 1 || sp.args[0].tag() != Con::Tag::lam) break;
    const Con& body = sp.args[0];
    shape.quantified.push_back(KindBinding{body.name(), Polarity::mixed, *body.binder_kind()});
    cur = body.body();
  }

  auto as_arrow = [](const Con& c) -> std::optional<std::pair<Con, Con>> {
    Spine sp = spine_of(c);
    if (sp.head.is_const(ConstName::arrow) && sp.args.size() == 2) return std::pair{sp.args[0], sp.args[1]};
    return std::nullopt;
  };
  auto as_fixpoint = [&](const Con& c, ConstName which) -> std::optional<Spine> {
    Spine sp = spine_of(c);
    if (sp.head.is_const(which) && sp.args.size() >= 2 && is_size(sp.args[0], iota)) return sp;
    return std::nullopt;
  };

  for (unsigned k = 0; k < n; ++k) {
    auto arrow = as_arrow(cur);
    if (!arrow)
      shape_error("expected " + std::to_string(n) + " leading arguments before the recursive one in " +
                      to_string(matrix),
                  continuity);
    shape.domains.push_back(arrow->first);
    cur = arrow->second;
  }

  const char* name = flavor == Flavor::mu ? "mu" : "nu";
  if (flavor == Flavor::mu) {
    auto arrow = as_arrow(cur);
    std::optional<Spine> fix = arrow ? as_fixpoint(arrow->first, ConstName::mu) : std::nullopt;
    if (!fix)
      shape_error("argument " + std::to_string(n + 1) + " of " + to_string(matrix) + " is not an inductive type of size " +
                      iota,
                  continuity);
    shape.functor = fix->args[1];
    shape.params.assign(fix->args.begin() + 2, fix->args.end());
    shape.codomain = arrow->second;
  } else {
    std::optional<Spine> fix = as_fixpoint(cur, ConstName::nu);
    if (!fix)
      shape_error("result of " + to_string(matrix) + " after " + std::to_string(n) +
                      " arguments is not a coinductive type of size " + iota,
                  continuity);
    shape.functor = fix->args[1];
    shape.params.assign(fix->args.begin() + 2, fix->args.end());
  }

  if (!continuity)
    throw Error(Judgement::admissibility, "NotSemiContinuous",
                Failure{"admissibility",
                        "type " + to_string(matrix) + " of fix" + name + " is not upper semi-continuous in " + iota,
                        {continuity.failure()}});
  shape.continuity = std::move(continuity).take_derivation();
  return shape;
}

}  // namespace fwh
