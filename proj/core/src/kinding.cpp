#include "fwh/kinding.hpp"

#include <algorithm>
#include <array>

namespace fwh {

Kind const_kind(ConstName c, const std::optional<Kind>& index) {
  using P = Polarity;
  const Kind star = Kind::star();
  const Kind ord = Kind::ord();
  switch (c) {
    case ConstName::unit: return star;
    case ConstName::sum:
    case ConstName::prod: return Kind::arrow(P::plus, star, Kind::arrow(P::plus, star, star));
    case ConstName::arrow: return Kind::arrow(P::minus, star, Kind::arrow(P::plus, star, star));
    case ConstName::succ: return Kind::arrow(P::plus, ord, ord);
    case ConstName::infty: return ord;
    case ConstName::forall: {
      const Kind& k = index.value();
      return Kind::arrow(P::plus, Kind::arrow(P::mixed, k, star), star);
    }
    case ConstName::mu:
    case ConstName::nu: {
      const Kind& k = index.value();
      const Kind functional = Kind::arrow(P::plus, k, k);
      return Kind::arrow(c == ConstName::mu ? P::plus : P::minus, ord, Kind::arrow(P::plus, functional, k));
    }
  }
  return star;
}

namespace {

// Raised for a variable used at a polarity not below +; lets lambda synthesis retry.
class PolarityError : public Error {
 public:
  PolarityError(std::string variable, Failure f)
      : Error(Judgement::kinding, "PolarityViolation", std::move(f)), variable_(std::move(variable)) {}
  [[nodiscard]] const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

[[noreturn]] void fail(const std::string& code, const std::string& rule, std::string message) {
  throw Error(Judgement::kinding, code, Failure{rule, std::move(message), {}});
}

std::string judgement_text(const Con& c, const Kind& k) { return to_string(c) + " : " + to_string(k); }

bool is_unindexed_binder_const(const Con& c) {
  return c.tag() == Con::Tag::constant &&
         (c.is_const(ConstName::forall) || c.is_const(ConstName::mu) || c.is_const(ConstName::nu)) &&
         !c.index_kind();
}

class Elaborator {
 public:
  Elaborator(const TypeAbbrevs* abbrevs, const KindContext& root) : abbrevs_(abbrevs) {
    for (const auto& b : root.entries()) scope_.push_back(b.name);
  }

  Elaborated synth(const KindContext& d, const Con& c) {
    switch (c.tag()) {
      case Con::Tag::constant: {
        if (!c.index_kind() && is_unindexed_binder_const(c))
          fail("CannotInferKind", "kind-c", "cannot infer the kind index of " + std::string(to_string(c.const_name())));
        Kind k = const_kind(c.const_name(), c.index_kind());
        return {c, k, Derivation{"kind-c", judgement_text(c, k), {}}};
      }
      case Con::Tag::var: return synth_var(d, c);
      case Con::Tag::lam: return synth_lam(d, c);
      case Con::Tag::app: return synth_app(d, c, std::nullopt);
    }
    fail("KindMismatch", "kind-c", "unreachable");
  }

  Elaborated check(const KindContext& d, const Con& c, const Kind& k) {
    if (c.tag() == Con::Tag::lam) return check_lam(d, c, k);
    Elaborated e = c.tag() == Con::Tag::app ? synth_app(d, c, k) : synth(d, c);
    if (e.kind == k) return e;
    if (!kind_leq(e.kind, k))
      fail("KindMismatch", "kind-app",
           "expected kind " + to_string(k) + " but " + to_string(e.con) + " has kind " + to_string(e.kind));
    Derivation sub{"kind-sub", judgement_text(e.con, k), {std::move(e.derivation)}};
    return {std::move(e.con), k, std::move(sub)};
  }

 private:
  Elaborated synth_var(const KindContext& d, const Con& c) {
    if (const KindBinding* b = d.lookup(c.name())) {
      if (!polarity_leq(b->polarity, Polarity::plus))
        throw PolarityError(c.name(), Failure{"kind-var",
                                              "variable " + c.name() + " is bound at polarity " +
                                                  std::string(to_string(b->polarity)) + " but used positively",
                                              {}});
      return {c, b->kind, Derivation{"kind-var", judgement_text(c, b->kind), {}}};
    }
    if (std::find(scope_.begin(), scope_.end(), c.name()) != scope_.end())
      throw PolarityError(c.name(), Failure{"kind-var",
                                            "variable " + c.name() + " is not available in a mixed-polarity position",
                                            {}});
    if (abbrevs_) {
      if (auto it = abbrevs_->find(c.name()); it != abbrevs_->end())
        return {it->second.body, it->second.kind,
                Derivation{"kind-abbrev", c.name() + " : " + to_string(it->second.kind), {}}};
    }
    fail("UnboundVariable", "kind-var", "unbound type variable " + c.name());
  }

  Elaborated synth_lam(const KindContext& d, const Con& c) {
    if (!c.binder_kind()) fail("CannotInferKind", "kind-abs", "binder " + c.name() + " needs a kind annotation");
    const Kind& dom = *c.binder_kind();
    constexpr std::array order{Polarity::plus, Polarity::minus, Polarity::mixed};
    for (Polarity p : order) {
      try {
        ScopeGuard guard(scope_, c.name());
        Elaborated body = synth(d.extended(c.name(), p, dom), c.body());
        Kind k = Kind::arrow(p, dom, body.kind);
        Con lam = Con::lam(c.name(), dom, std::move(body.con));
        std::string text = judgement_text(lam, k);
        return {std::move(lam), std::move(k), Derivation{"kind-abs", std::move(text), {std::move(body.derivation)}}};
      } catch (const PolarityError& e) {
        if (e.variable() != c.name() || p == Polarity::mixed) throw;
      }
    }
    fail("PolarityViolation", "kind-abs", "unreachable");
  }

  Elaborated check_lam(const KindContext& d, const Con& c, const Kind& k) {
    if (!k.is_arrow())
      fail("KindMismatch", "kind-abs", "abstraction " + to_string(c) + " checked against kind " + to_string(k));
    const Kind binder = c.binder_kind().value_or(k.domain());
    if (!kind_leq(k.domain(), binder))
      fail("KindMismatch", "kind-abs",
           "binder " + c.name() + " : " + to_string(binder) + " cannot accept " + to_string(k.domain()));
    ScopeGuard guard(scope_, c.name());
    Elaborated body = check(d.extended(c.name(), k.polarity(), binder), c.body(), k.codomain());
    Con lam = Con::lam(c.name(), binder, std::move(body.con));
    std::string text = judgement_text(lam, k);
    return {std::move(lam), k, Derivation{"kind-abs", std::move(text), {std::move(body.derivation)}}};
  }

  // Recovers the index kind of an unannotated forall/mu/nu head from its arguments.
  Con index_head(const KindContext& d, const Spine& sp, const std::optional<Kind>& expected) {
    const ConstName c = sp.head.const_name();
    const bool is_forall = c == ConstName::forall;
    const std::size_t fn_pos = is_forall ? 0 : 1;
    if (sp.args.size() <= fn_pos)
      fail("CannotInferKind", "kind-c", "cannot infer the kind index of a partially applied " +
                                           std::string(to_string(c)));
    const Con& fn = sp.args[fn_pos];
    std::optional<Kind> index;
    if (fn.tag() == Con::Tag::lam && fn.binder_kind()) {
      index = *fn.binder_kind();
    } else if (!is_forall && expected && sp.args.size() == 2) {
      index = *expected;
    } else {
      Elaborated e = synth(d, fn);
      if (!e.kind.is_arrow()) fail("NotAnArrow", "kind-app", "argument of " + std::string(to_string(c)) + " is not a function");
      index = e.kind.domain();
    }
    if (!is_forall && !index->pure())
      fail("KindMismatch", "kind-c", std::string(to_string(c)) + " requires a pure kind, got " + to_string(*index));
    return Con::constant(c, index);
  }

  Elaborated synth_app(const KindContext& d, const Con& c, const std::optional<Kind>& expected) {
    Spine sp = spine_of(c);
    if (is_unindexed_binder_const(sp.head)) sp.head = index_head(d, sp, expected);

    // a + 1 at kind ord is the successor.
    if (sp.head.is_const(ConstName::sum) && sp.args.size() == 2 && sp.args[1].is_const(ConstName::unit)) {
      bool ordinal = false;
      try {
        ordinal = synth(d, sp.args[0]).kind.is_ord();
      } catch (const Error&) {
      }
      if (ordinal) return synth_app(d, types::succ(sp.args[0]), expected);
    }

    Elaborated acc = [&] {
      if (sp.head.tag() == Con::Tag::lam && !sp.head.binder_kind() && !sp.args.empty()) {
        Kind arg_kind = synth(d, sp.args[0]).kind;
        return synth(d, Con::lam(sp.head.name(), arg_kind, sp.head.body()));
      }
      return synth(d, sp.head);
    }();
    for (const Con& arg : sp.args) {
      if (!acc.kind.is_arrow())
        fail("NotAnArrow", "kind-app", to_string(acc.con) + " of kind " + to_string(acc.kind) + " is applied");
      const Polarity p = acc.kind.polarity();
      Elaborated a = check(invert_context(p, d), arg, acc.kind.domain());
      Con app = Con::app(std::move(acc.con), std::move(a.con));
      Kind k = acc.kind.codomain();
      std::string text = judgement_text(app, k);
      acc = Elaborated{std::move(app), k,
                       Derivation{"kind-app", std::move(text), {std::move(acc.derivation), std::move(a.derivation)}}};
    }
    return acc;
  }

  struct ScopeGuard {
    ScopeGuard(std::vector<std::string>& scope, const std::string& name) : scope_(scope) { scope_.push_back(name); }
    ~ScopeGuard() { scope_.pop_back(); }
    ScopeGuard(const ScopeGuard&) = delete;
    ScopeGuard& operator=(const ScopeGuard&) = delete;
    std::vector<std::string>& scope_;
  };

  const TypeAbbrevs* abbrevs_;
  std::vector<std::string> scope_;  // every binder in lexical scope, including ones hidden by inversion
};

}  // namespace

Elaborated elaborate(const KindContext& delta, const Con& c, const std::optional<Kind>& expected,
                     const TypeAbbrevs* abbrevs) {
  Elaborator el(abbrevs, delta);
  try {
    return expected ? el.check(delta, c, *expected) : el.synth(delta, c);
  } catch (const PolarityError& e) {
    throw Error(e.judgement(), e.code(), e.failure(), e.span());
  }
}

Kind kind_check(const KindContext& delta, const Con& c) { return elaborate(delta, c).kind; }

Elaborated kind_check_with_derivation(const KindContext& delta, const Con& c) { return elaborate(delta, c); }

bool kinds_to(const KindContext& delta, const Con& c, const Kind& k) {
  try {
    (void)elaborate(delta, c, k);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace fwh
