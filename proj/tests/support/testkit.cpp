#include "testkit.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "fwh/eval.hpp"
#include "fwh/kinding.hpp"
#include "fwh/normalize.hpp"
#include "fwh/subtype.hpp"

namespace fwh::testkit {

std::filesystem::path corpus_dir() { return FWH_CORPUS_DIR; }

std::filesystem::path corpus_file(std::string_view stem) {
  return corpus_dir() / (std::string(stem) + ".fwh");
}

Program load_corpus(std::string_view stem, LoadOptions options) {
  const auto path = corpus_file(stem);
  return check_text(read_file(path), path.string(), options);
}

const std::vector<std::string>& accepted_corpus() {
  static const std::vector<std::string> files{"eqgrose", "succpred", "nats", "zip", "bf"};
  return files;
}

const std::vector<std::string>& rejected_corpus() {
  static const std::vector<std::string> files{"loop", "loopnot", "hungry"};
  return files;
}

std::string PropertyResult::summary() const {
  std::ostringstream os;
  os << name << ": " << cases << " cases, " << exercised << " exercised, " << failures << " failures";
  if (!witness.empty()) os << "; witness " << witness;
  return os.str();
}

// Constructors

namespace {

Con app(Con f, Con a) { return Con::app(std::move(f), std::move(a)); }
Con var(const std::string& x) { return Con::var(x); }

Con surface_forall(const std::string& x, Kind k, Con body) {
  return app(Con::constant(ConstName::forall), Con::lam(x, std::move(k), std::move(body)));
}

Con fixpoint(ConstName which, Con size, const std::string& x, Con body) {
  return app(app(Con::constant(which), std::move(size)), Con::lam(x, Kind::star(), std::move(body)));
}

Con replace_infinity(const Con& c) {
  switch (c.tag()) {
    case Con::Tag::constant:
      return c.is_const(ConstName::infty) ? types::succ(types::infty()) : c;
    case Con::Tag::var: return c;
    case Con::Tag::lam: return Con::lam(c.name(), c.binder_kind(), replace_infinity(c.body()));
    case Con::Tag::app: return Con::app(replace_infinity(c.fun()), replace_infinity(c.arg()));
  }
  return c;
}

}  // namespace

const TypeAbbrevs& prelude_types() {
  static const TypeAbbrevs abbrevs = check_text("", "<empty>").abbrevs();
  return abbrevs;
}

Con parse_elaborated(const KindContext& delta, std::string_view text, const std::optional<Kind>& kind) {
  return elaborate(delta, parse_type(text), kind, &prelude_types()).con;
}

ConGen::ConGen(std::uint64_t seed) : rng_(seed), abbrevs_(prelude_types()) {
  const Polarity o = Polarity::mixed;
  delta_.push("i", o, Kind::ord());
  delta_.push("j", o, Kind::ord());
  delta_.push("A", o, Kind::star());
  delta_.push("B", o, Kind::star());
  delta_.push("F", o, Kind::arrow(Polarity::plus, Kind::star(), Kind::star()));
}

int ConGen::pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

std::string ConGen::fresh(const char* stem) { return stem + std::to_string(++counter_); }

Con ConGen::ord_at(int depth, std::vector<std::string>& ord_scope) {
  if (holes_) {
    holes_->push_back("h" + std::to_string(holes_->size()));
    return var(holes_->back());
  }
  const int n = depth > 0 ? 5 : 4;
  switch (pick(n)) {
    case 0: return types::infty();
    case 1: return var("i");
    case 2: return var("j");
    case 3: return ord_scope.empty() ? var("i") : var(ord_scope[pick(static_cast<int>(ord_scope.size()))]);
    default: return types::succ(ord_at(depth - 1, ord_scope));
  }
}

Con ConGen::type_at(int depth, std::vector<std::string>& scope) {
  auto leaf = [&]() -> Con {
    switch (pick(4)) {
      case 0: return types::unit();
      case 1: return var("A");
      case 2: return var("B");
      default: return scope.empty() ? var("A") : var(scope[pick(static_cast<int>(scope.size()))]);
    }
  };
  if (depth <= 0) return leaf();
  auto sub = [&] { return type_at(depth - 1, scope); };
  auto bind = [&](const std::string& x) {
    scope.push_back(x);
    Con body = type_at(depth - 1, scope);
    scope.pop_back();
    return body;
  };
  switch (pick(13)) {
    case 0: return types::arrow(sub(), sub());
    case 1: return types::sum(sub(), sub());
    case 2: return types::prod(sub(), sub());
    case 3: {
      const std::string x = fresh("X");
      return surface_forall(x, Kind::star(), bind(x));
    }
    case 4: {
      const std::string k = fresh("k");
      ord_scope_.push_back(k);
      Con body = sub();
      ord_scope_.pop_back();
      return surface_forall(k, Kind::ord(), body);
    }
    case 5:
    case 6: {
      const std::string x = fresh("X");
      Con size = ord_at(depth - 1, ord_scope_);
      // Keep the bound variable out of arrow domains so the body stays positive.
      Con body = types::sum(types::unit(), types::prod(sub(), var(x)));
      return fixpoint(pick(2) == 0 ? ConstName::mu : ConstName::nu, size, x, body);
    }
    case 7: return app(var("F"), sub());
    case 8: return app(var("Nat"), ord_at(depth - 1, ord_scope_));
    case 9: return app(app(var("List"), ord_at(depth - 1, ord_scope_)), sub());
    case 10: return app(app(var("Stream"), ord_at(depth - 1, ord_scope_)), sub());
    case 11: {
      const std::string y = fresh("Y");
      return app(Con::lam(y, Kind::star(), bind(y)), sub());
    }
    default: return leaf();
  }
}

Con ConGen::surface_type(int depth) {
  std::vector<std::string> scope;
  return type_at(depth, scope);
}

Con ConGen::surface_ord(int depth) { return ord_at(depth, ord_scope_); }

Con ConGen::surface_operator(int depth) {
  const std::string x = fresh("X");
  std::vector<std::string> scope{x};
  return Con::lam(x, Kind::star(), type_at(depth, scope));
}

ConGen::Sample ConGen::well_kinded(int depth) {
  for (;;) {
    const int shape = pick(10);
    Con surface = shape < 7 ? surface_type(depth) : shape < 8 ? surface_ord(depth) : surface_operator(depth);
    try {
      Elaborated e = elaborate(delta_, surface, std::nullopt, &abbrevs_);
      return Sample{surface, e.con, e.kind};
    } catch (const Error&) {
    }
  }
}

ConGen::Skeleton ConGen::skeleton(int depth) {
  for (;;) {
    std::vector<std::string> holes;
    holes_ = &holes;
    Con surface = surface_type(depth);
    holes_ = nullptr;
    KindContext delta = delta_;
    for (const auto& h : holes) delta.push(h, Polarity::mixed, Kind::ord());
    try {
      Elaborated e = elaborate(delta, surface, Kind::star(), &abbrevs_);
      return Skeleton{e.con, holes};
    } catch (const Error&) {
    }
  }
}

Con ConGen::instantiate(const Skeleton& s) {
  static const Con sizes[] = {var("i"), types::succ(var("i")), types::succ(types::succ(var("i"))), var("j"),
                              types::infty()};
  Con c = s.con;
  for (const auto& h : s.holes) c = subst_constructor(sizes[pick(5)], h, c);
  return c;
}

Con ConGen::equal_variant(const Con& c) {
  Con out = c;
  const int rounds = 1 + pick(2);
  for (int r = 0; r < rounds; ++r) {
    switch (pick(3)) {
      case 0: {
        const std::string y = fresh("Y");
        out = app(Con::lam(y, Kind::star(), var(y)), out);
        break;
      }
      case 1: {
        const std::string y = fresh("Y");
        out = app(Con::lam(y, Kind::star(), out), surface_type(1));
        break;
      }
      default: out = replace_infinity(out); break;
    }
  }
  return out;
}

// Terms

namespace {

Term tapp(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }
Term tconst(TermConst c) { return Term::constant(c); }
Term apps(Term head, std::initializer_list<Term> args) {
  for (const Term& a : args) head = tapp(std::move(head), a);
  return head;
}

}  // namespace

Term TermGen::term(int depth) {
  std::vector<std::string> scope;
  return term_in(depth, scope);
}

Term TermGen::redex(int depth, std::vector<std::string>& scope) {
  auto sub = [&] { return term_in(depth - 1, scope); };
  auto lam = [&] {
    const std::string x = "x" + std::to_string(++counter_);
    scope.push_back(x);
    Term body = term_in(depth - 1, scope);
    scope.pop_back();
    return Term::lam(x, std::nullopt, body);
  };
  switch (pick(7)) {
    case 0: return tapp(lam(), sub());
    case 1: return tapp(tconst(pick(2) ? TermConst::fst : TermConst::snd), apps(tconst(TermConst::pair), {sub(), sub()}));
    case 2:
      return apps(tconst(TermConst::case_of), {tapp(tconst(pick(2) ? TermConst::inl : TermConst::inr), sub()),
                                               lam(), lam()});
    case 3: return tapp(tconst(TermConst::out), tapp(tconst(TermConst::in), sub()));
    case 4: {
      const unsigned n = static_cast<unsigned>(pick(2));
      Term fix = Term::fix(Flavor::nu, n, std::nullopt, lam());
      for (unsigned k = 0; k < n; ++k) fix = tapp(fix, sub());
      return tapp(tconst(TermConst::out), fix);
    }
    case 5: {
      const unsigned n = static_cast<unsigned>(pick(2));
      Term fix = Term::fix(Flavor::mu, n, std::nullopt, lam());
      for (unsigned k = 0; k < n; ++k) fix = tapp(fix, sub());
      return tapp(fix, tapp(tconst(TermConst::in), sub()));
    }
    default: return tapp(tconst(TermConst::out), Term::fix(Flavor::nu, 0, std::nullopt, lam()));
  }
}

Term TermGen::term_in(int depth, std::vector<std::string>& scope) {
  auto leaf = [&]() -> Term {
    if (scope.empty() || pick(4) == 0) return tconst(TermConst::unit);
    return Term::var(scope[pick(static_cast<int>(scope.size()))]);
  };
  if (depth <= 0) return leaf();
  auto sub = [&] { return term_in(depth - 1, scope); };
  switch (pick(10)) {
    case 0: {
      const std::string x = "x" + std::to_string(++counter_);
      scope.push_back(x);
      Term body = sub();
      scope.pop_back();
      return Term::lam(x, std::nullopt, body);
    }
    case 1: return tapp(sub(), sub());
    case 2: return apps(tconst(TermConst::pair), {sub(), sub()});
    case 3: return tapp(tconst(pick(2) ? TermConst::fst : TermConst::snd), sub());
    case 4: return tapp(tconst(pick(2) ? TermConst::inl : TermConst::inr), sub());
    case 5: return tapp(tconst(pick(2) ? TermConst::in : TermConst::out), sub());
    case 6:
    case 7:
    case 8: return redex(depth, scope);
    default: return leaf();
  }
}

// Declarations

namespace {

Kind random_kind(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Kind::star();
    case 1: return Kind::arrow(Polarity::plus, Kind::ord(), Kind::star());
    case 2: return Kind::arrow(Polarity::minus, Kind::star(), Kind::star());
    default: return Kind::arrow(Polarity::mixed, Kind::star(), Kind::arrow(Polarity::plus, Kind::ord(), Kind::star()));
  }
}

}  // namespace

Decl random_decl(std::mt19937_64& rng, unsigned index) {
  ConGen types(rng());
  TermGen terms(rng());
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  const std::string suffix = std::to_string(index);
  switch (pick(3)) {
    case 0: {
      std::optional<Kind> k;
      if (pick(2)) k = random_kind(rng);
      return TypeDecl{"T" + suffix, k, pick(4) == 0 ? types.surface_operator(2) : types.surface_type(3), {}};
    }
    case 1: return DefDecl{"a" + suffix, types.surface_type(3), std::nullopt, {}};
    default: {
      Term body = terms.term(3);
      const int wrappers = pick(4);
      for (int w = 0; w < wrappers; ++w) {
        switch (pick(5)) {
          case 0: body = Term::ty_lam("Z" + std::to_string(w), pick(2) ? Kind::star() : Kind::ord(), body); break;
          case 1: body = Term::ty_app(body, types.surface_type(2)); break;
          case 2: body = Term::anno(body, types.surface_type(2)); break;
          case 3: body = Term::lam("y" + std::to_string(w), types.surface_type(2), body); break;
          default:
            body = Term::fix(pick(2) ? Flavor::mu : Flavor::nu, static_cast<unsigned>(pick(3)),
                             Con::lam("q", Kind::ord(), types.surface_type(2)), body);
            break;
        }
      }
      std::optional<Con> type;
      if (pick(2)) type = types.surface_type(3);
      return DefDecl{"d" + suffix, type, body, {}};
    }
  }
}

// Properties

namespace {

template <typename Case>
PropertyResult run_property(std::string name, std::size_t cases, Case&& one) {
  PropertyResult r{std::move(name), cases, 0, 0, {}};
  for (std::size_t n = 0; n < cases; ++n) {
    std::string witness;
    bool exercised = false;
    bool ok = true;
    try {
      ok = one(exercised, witness);
    } catch (const std::exception& e) {
      ok = false;
      witness += std::string(" threw: ") + e.what();
    }
    if (exercised) ++r.exercised;
    if (!ok) {
      ++r.failures;
      if (r.witness.empty()) r.witness = witness;
    }
  }
  return r;
}

}  // namespace

PropertyResult subtype_reflexive(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("subtype reflexivity", cases, [&](bool& exercised, std::string& w) {
    auto s = gen.well_kinded(3);
    exercised = true;
    w = to_string(s.con);
    return subtype(gen.context(), s.con, s.con, s.kind).ok();
  });
}

PropertyResult subtype_transitive(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("subtype transitivity", cases, [&](bool& exercised, std::string& w) {
    auto sk = gen.skeleton(3);
    const Con a = gen.instantiate(sk), b = gen.instantiate(sk), c = gen.instantiate(sk);
    const auto& delta = gen.context();
    if (!subtype(delta, a, b, Kind::star()).ok() || !subtype(delta, b, c, Kind::star()).ok()) return true;
    exercised = true;
    w = to_string(a) + " <= " + to_string(b) + " <= " + to_string(c);
    return subtype(delta, a, c, Kind::star()).ok();
  });
}

namespace {

// Elaborated companion of a kind-* sample: an equal variant or an unrelated type.
Con companion(ConGen& gen, const Con& surface, bool related) {
  for (;;) {
    Con s = related ? gen.equal_variant(surface) : gen.surface_type(3);
    try {
      return elaborate(gen.context(), s, Kind::star(), &gen.abbrevs()).con;
    } catch (const Error&) {
      if (related) throw;
    }
  }
}

ConGen::Sample star_sample(ConGen& gen) {
  for (;;) {
    auto s = gen.well_kinded(3);
    if (s.kind.is_star()) return s;
  }
}

}  // namespace

PropertyResult equality_reflexive(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("constr_equal reflexivity", cases, [&](bool& exercised, std::string& w) {
    auto s = gen.well_kinded(3);
    exercised = true;
    w = to_string(s.con);
    return constr_equal(gen.context(), s.con, s.con, s.kind);
  });
}

PropertyResult equality_symmetric(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("constr_equal symmetry", cases, [&](bool& exercised, std::string& w) {
    auto s = star_sample(gen);
    const bool related = gen.rng()() % 2 == 0;
    const Con b = companion(gen, s.surface, related);
    exercised = true;
    w = to_string(s.con) + " vs " + to_string(b);
    const bool ab = constr_equal(gen.context(), s.con, b, Kind::star());
    const bool ba = constr_equal(gen.context(), b, s.con, Kind::star());
    return ab == ba && (!related || ab);
  });
}

PropertyResult equality_transitive(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("constr_equal transitivity", cases, [&](bool& exercised, std::string& w) {
    auto s = star_sample(gen);
    const Con b = companion(gen, s.surface, true);
    const Con c = companion(gen, s.surface, gen.rng()() % 4 != 0);
    const auto& delta = gen.context();
    if (!constr_equal(delta, s.con, b, Kind::star()) || !constr_equal(delta, b, c, Kind::star())) return true;
    exercised = true;
    w = to_string(s.con) + " = " + to_string(b) + " = " + to_string(c);
    return constr_equal(delta, s.con, c, Kind::star());
  });
}

PropertyResult normalize_idempotent(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("normalize idempotence", cases, [&](bool& exercised, std::string& w) {
    auto s = gen.well_kinded(3);
    exercised = true;
    const Con once = normalize(gen.context(), s.con, s.kind);
    w = to_string(s.con) + " ~> " + to_string(once);
    return alpha_eq(normalize(gen.context(), once, s.kind), once);
  });
}

PropertyResult normalize_preserves_kind(std::size_t cases, std::uint64_t seed) {
  ConGen gen(seed);
  return run_property("normalize kind preservation", cases, [&](bool& exercised, std::string& w) {
    auto s = gen.well_kinded(3);
    exercised = true;
    const Con nf = normalize(gen.context(), s.con, s.kind);
    w = to_string(nf) + " : " + to_string(s.kind);
    return kinds_to(gen.context(), nf, s.kind);
  });
}

PropertyResult safe_reduction_deterministic(std::size_t cases, std::uint64_t seed) {
  TermGen gen(seed);
  return run_property("safe reduction determinism", cases, [&](bool& exercised, std::string& w) {
    const Term t = gen.term(4);
    w = to_string(t);
    if (safe_axioms_matching(t) > 1) return false;
    const auto first = safe_step(t);
    const auto second = safe_step(t);
    if (!first) return !second;
    exercised = true;
    return second && alpha_eq(*first, *second);
  });
}

PropertyResult safe_reduction_in_full(std::size_t cases, std::uint64_t seed) {
  TermGen gen(seed);
  return run_property("safe reduction within full reduction", cases, [&](bool& exercised, std::string& w) {
    const Term t = gen.term(4);
    const auto r = safe_step(t);
    if (!r) return true;
    exercised = true;
    const Term target = erase(*r);
    w = to_string(t) + " |> " + to_string(target);
    std::deque<std::pair<Term, int>> queue{{erase(t), 0}};
    std::size_t visited = 0;
    while (!queue.empty() && visited < 4000) {
      auto [u, d] = queue.front();
      queue.pop_front();
      ++visited;
      if (d >= 4) continue;
      for (const Term& v : all_reducts(u)) {
        const Term ev = erase(v);
        if (alpha_eq(ev, target)) return true;
        queue.emplace_back(ev, d + 1);
      }
    }
    return false;
  });
}

PropertyResult round_trip_random(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  unsigned index = 0;
  return run_property("print/parse round trip", cases, [&](bool& exercised, std::string& w) {
    const Decl d = random_decl(rng, index++);
    const std::string text = to_string(d);
    w = text;
    exercised = true;
    const SourceFile parsed = parse_source(text);
    return parsed.decls.size() == 1 && alpha_eq(parsed.decls.front(), d) && to_string(parsed.decls.front()) == text;
  });
}

std::vector<PropertyResult> all_properties(std::size_t cases, std::uint64_t seed) {
  return {subtype_reflexive(cases, seed),          subtype_transitive(cases, seed),
          equality_reflexive(cases, seed),         equality_symmetric(cases, seed),
          equality_transitive(cases, seed),        normalize_idempotent(cases, seed),
          normalize_preserves_kind(cases, seed),   safe_reduction_deterministic(cases, seed),
          safe_reduction_in_full(cases, seed)};
}

ReductionCheck subject_reduction(const Program& program, const std::string& def, std::size_t max_steps) {
  ReductionCheck result;
  const CheckedDef* d = program.find(def);
  if (!d || !d->type || !d->elaborated) {
    result.ok = false;
    result.failure = def + ": no checked definition";
    return result;
  }
  const TypingContext gamma = program.assumptions();
  const TypeChecker checker = program.checker();
  Term t = program.inline_typed(Term::var(def));
  for (;;) {
    try {
      (void)checker.check(gamma, t, *d->type);
    } catch (const Error& e) {
      result.ok = false;
      result.failure = def + " after " + std::to_string(result.steps) + " steps: " + e.what() + "\n  term " +
                       to_string(t);
      return result;
    }
    if (result.steps == max_steps) return result;
    StepResult s = step(t);
    if (s.kind != StepKind::stepped) return result;
    t = *s.term;
    ++result.steps;
  }
}

}  // namespace fwh::testkit
