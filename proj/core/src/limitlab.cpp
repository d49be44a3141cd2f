#include "fwh/limitlab.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace fwh::lab {

FinLattice::FinLattice(unsigned base) : base_(base) {
  if (base > 8) throw std::invalid_argument("lattice base too large");
}

std::string show(Elem e, unsigned base) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < base; ++i) {
    if (!(e >> i & 1U)) continue;
    if (!first) s += ",";
    s += static_cast<char>('a' + i);
    first = false;
  }
  return s + "}";
}

std::string show(Ordinal o) {
  if (o.omegas == 0) return std::to_string(o.finite);
  return o.finite == 0 ? "w" : "w+" + std::to_string(o.finite);
}

OrdSeq zip_with(const OrdSeq& a, const OrdSeq& b, const std::function<Elem(Elem, Elem)>& op) {
  JointShape s;
  s.add(a).add(b);
  return OrdSeq::from_function(s.prefix, s.cycle, [&](std::size_t n) { return op(a.at(n), b.at(n)); });
}

Elem inf_omega(const OrdSeq& f, const FinLattice& l) { return tail_inf(f, 0, l); }
Elem sup_omega(const OrdSeq& f, const FinLattice&) { return tail_sup(f, 0); }

Elem tail_sup(const OrdSeq& f, std::size_t from) {
  Elem acc = 0;
  std::size_t end = std::max(from, f.prefix_len()) + f.cycle_len();
  for (std::size_t n = from; n < end; ++n) acc |= f.at(n);
  return acc;
}

Elem tail_inf(const OrdSeq& f, std::size_t from, const FinLattice& l) {
  Elem acc = l.top();
  std::size_t end = std::max(from, f.prefix_len()) + f.cycle_len();
  for (std::size_t n = from; n < end; ++n) acc &= f.at(n);
  return acc;
}

Elem liminf_omega(const OrdSeq& f, const FinLattice& l) {
  Elem acc = l.top();
  for (Elem e : f.cycle()) acc &= e;
  return acc;
}

Elem limsup_omega(const OrdSeq& f, const FinLattice&) {
  Elem acc = 0;
  for (Elem e : f.cycle()) acc |= e;
  return acc;
}

Elem liminf_brute(const OrdSeq& f, const FinLattice& l) {
  Elem acc = 0;
  std::size_t bound = f.prefix_len() + 2 * f.cycle_len();
  for (std::size_t n0 = 0; n0 <= bound; ++n0) {
    Elem inner = l.top();
    for (std::size_t n = n0; n <= n0 + f.prefix_len() + f.cycle_len(); ++n) inner &= f.at(n);
    acc |= inner;
  }
  return acc;
}

Elem limsup_brute(const OrdSeq& f, const FinLattice& l) {
  Elem acc = l.top();
  std::size_t bound = f.prefix_len() + 2 * f.cycle_len();
  for (std::size_t n0 = 0; n0 <= bound; ++n0) {
    Elem inner = 0;
    for (std::size_t n = n0; n <= n0 + f.prefix_len() + f.cycle_len(); ++n) inner |= f.at(n);
    acc &= inner;
  }
  return acc;
}

Ordinal liminf_omega(const OrdinalSeq& phi) { return *std::min_element(phi.cycle().begin(), phi.cycle().end()); }
Ordinal limsup_omega(const OrdinalSeq& phi) { return *std::max_element(phi.cycle().begin(), phi.cycle().end()); }

MonoOp::MonoOp(unsigned in_bits, unsigned out_bits, std::vector<Elem> table)
    : in_bits_(in_bits), out_bits_(out_bits), table_(std::move(table)) {
  if (table_.size() != (std::size_t{1} << in_bits)) throw std::invalid_argument("operator table has wrong size");
  Elem out_mask = static_cast<Elem>((std::size_t{1} << out_bits) - 1);
  for (Elem e : table_)
    if ((e & ~out_mask) != 0) throw std::invalid_argument("operator value outside the codomain");
  if (!is_monotone(in_bits, table_)) throw std::invalid_argument("operator is not monotone");
}

bool MonoOp::is_monotone(unsigned in_bits, const std::vector<Elem>& table) {
  // Checking covering pairs x < x + bit suffices.
  for (Elem x = 0; x < table.size(); ++x)
    for (unsigned b = 0; b < in_bits; ++b)
      if (!(x >> b & 1U) && !FinLattice::leq(table[x], table[x | (1U << b)])) return false;
  return true;
}

MonoOp MonoOp::random(unsigned in_bits, unsigned out_bits, std::mt19937_64& rng) {
  std::size_t n = std::size_t{1} << in_bits;
  Elem out_mask = static_cast<Elem>((std::size_t{1} << out_bits) - 1);
  std::vector<Elem> raw(n);
  // Sparse seeds keep the closure from saturating at the top.
  std::uniform_int_distribution<int> coin(0, 3);
  for (auto& e : raw) e = coin(rng) == 0 ? static_cast<Elem>(rng()) & out_mask : 0;
  std::vector<Elem> closed(n);
  for (Elem x = 0; x < n; ++x) {
    Elem acc = raw[x];
    for (unsigned b = 0; b < in_bits; ++b)
      if (x >> b & 1U) acc |= closed[x & ~(1U << b)];
    closed[x] = acc;
  }
  return MonoOp(in_bits, out_bits, std::move(closed));
}

MonoOp MonoOp::fix_low(Elem g, unsigned g_bits) const {
  unsigned x_bits = in_bits_ - g_bits;
  std::vector<Elem> t(std::size_t{1} << x_bits);
  for (Elem x = 0; x < t.size(); ++x) t[x] = table_[g | (x << g_bits)];
  return MonoOp(x_bits, out_bits_, std::move(t));
}

MonoOp MonoOp::pointwise_join(const std::vector<MonoOp>& ops) {
  std::vector<Elem> t(ops.front().table_.size(), 0);
  for (const auto& op : ops)
    for (std::size_t i = 0; i < t.size(); ++i) t[i] |= op.table_[i];
  return MonoOp(ops.front().in_bits_, ops.front().out_bits_, std::move(t));
}

MonoOp MonoOp::pointwise_meet(const std::vector<MonoOp>& ops) {
  std::vector<Elem> t(ops.front().table_.size(), ~Elem{0});
  for (const auto& op : ops)
    for (std::size_t i = 0; i < t.size(); ++i) t[i] &= op.table_[i];
  return MonoOp(ops.front().in_bits_, ops.front().out_bits_, std::move(t));
}

Elem iterate(const MonoOp& f, Elem start, Ordinal alpha) {
  Elem x = start;
  if (alpha.omegas == 0) {
    for (unsigned i = 0; i < alpha.finite; ++i) x = f(x);
    return x;
  }
  std::map<Elem, std::size_t> seen;
  std::vector<Elem> trace;
  while (!seen.count(x)) {
    seen[x] = trace.size();
    trace.push_back(x);
    x = f(x);
  }
  Elem limit = 0;
  for (std::size_t i = seen[x]; i < trace.size(); ++i) limit |= trace[i];
  for (unsigned i = 0; i < alpha.finite; ++i) limit = f(limit);
  return limit;
}

Elem mu(const MonoOp& f, Ordinal alpha) { return iterate(f, 0, alpha); }
Elem nu(const MonoOp& f, Ordinal alpha) {
  return iterate(f, static_cast<Elem>((std::size_t{1} << f.out_bits()) - 1), alpha);
}

Applicative::Applicative(unsigned base, std::vector<unsigned> app) : base_(base), app_(std::move(app)) {
  if (app_.size() != std::size_t{base} * base) throw std::invalid_argument("application table has wrong size");
  for (unsigned v : app_)
    if (v >= base) throw std::invalid_argument("application result outside the base");
}

Applicative Applicative::random(unsigned base, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> pick(0, base - 1);
  std::vector<unsigned> app(std::size_t{base} * base);
  for (auto& v : app) v = pick(rng);
  return Applicative(base, std::move(app));
}

Elem Applicative::arrow(Elem a, Elem b) const {
  Elem out = 0;
  for (unsigned r = 0; r < base_; ++r) {
    bool ok = true;
    for (unsigned s = 0; s < base_ && ok; ++s)
      if (a >> s & 1U) ok = (b >> app_[r * base_ + s] & 1U) != 0;
    if (ok) out |= 1U << r;
  }
  return out;
}

bool LabReport::passed() const {
  return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaReport& r) { return r.passed(); });
}

std::string LabReport::text() const {
  std::ostringstream os;
  for (const auto& r : lemmas) {
    os << (r.passed() ? "PASS " : "FAIL ") << r.id << "  " << r.statement << "  (" << r.trials << " trials, "
       << r.failures << " counterexamples" << (r.expect_failure ? ", counterexample expected" : "") << ")\n";
    if (!r.witness.empty()) os << "     witness: " << r.witness << "\n";
  }
  os << (passed() ? "all checks passed" : "some checks failed") << "\n";
  return os.str();
}

namespace {

using Rng = std::mt19937_64;
using Witness = std::optional<std::string>;

unsigned uniform(Rng& rng, unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); }

FinLattice random_lattice(Rng& rng, unsigned max_base = 4) { return FinLattice(uniform(rng, 1, max_base)); }

Elem random_elem(const FinLattice& l, Rng& rng) { return static_cast<Elem>(rng()) & l.top(); }

OrdSeq random_seq(const FinLattice& l, Rng& rng) {
  std::vector<Elem> p(uniform(rng, 0, 4));
  std::vector<Elem> c(uniform(rng, 1, 4));
  for (auto& e : p) e = random_elem(l, rng);
  for (auto& e : c) e = random_elem(l, rng);
  return OrdSeq(std::move(p), std::move(c));
}

// Ascending chain, eventually constant.
OrdSeq random_ascending(const FinLattice& l, Rng& rng, Elem start = 0) {
  std::vector<Elem> p(uniform(rng, 0, 5));
  Elem cur = start;
  for (auto& e : p) {
    e = cur;
    if (uniform(rng, 0, 1) == 1) cur |= 1U << uniform(rng, 0, l.base() - 1);
  }
  return OrdSeq(std::move(p), {cur});
}

Ordinal random_ordinal(Rng& rng) {
  unsigned k = uniform(rng, 0, 9);
  if (k <= 6) return Ordinal::nat(k);
  return Ordinal::omega(k - 7);
}

OrdinalSeq random_phi(Rng& rng) {
  std::vector<Ordinal> p(uniform(rng, 0, 4));
  std::vector<Ordinal> c(uniform(rng, 1, 4));
  for (auto& o : p) o = random_ordinal(rng);
  for (auto& o : c) o = random_ordinal(rng);
  return OrdinalSeq(std::move(p), std::move(c));
}

OrdinalSeq random_monotone_phi(Rng& rng) {
  std::vector<Ordinal> v(uniform(rng, 1, 6));
  for (auto& o : v) o = random_ordinal(rng);
  std::sort(v.begin(), v.end());
  Ordinal last = v.back();
  v.pop_back();
  return OrdinalSeq(std::move(v), {last});
}

template <typename T, typename Show>
std::string show_seq(const Periodic<T>& s, Show&& show_one) {
  std::string out;
  for (const auto& e : s.prefix()) out += show_one(e) + " ";
  out += "(";
  for (std::size_t i = 0; i < s.cycle_len(); ++i) out += (i ? " " : "") + show_one(s.cycle()[i]);
  return out + ")^w";
}

std::string show_elems(const OrdSeq& s, const FinLattice& l) {
  return show_seq(s, [&](Elem e) { return show(e, l.base()); });
}

std::string show_phi(const OrdinalSeq& s) {
  return show_seq(s, [](Ordinal o) { return show(o); });
}

std::string show_op(const MonoOp& f) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.table().size(); ++i)
    out += (i ? " " : "") + show(f.table()[i], f.out_bits());
  return out + "]";
}

Witness unless(bool ok, const std::function<std::string()>& describe) {
  if (ok) return std::nullopt;
  return describe();
}

Witness sandwich(Rng& rng) {
  FinLattice l = random_lattice(rng);
  OrdSeq f = random_seq(l, rng);
  Elem i = inf_omega(f, l), li = liminf_omega(f, l), ls = limsup_omega(f, l), s = sup_omega(f, l);
  return unless(FinLattice::leq(i, li) && FinLattice::leq(li, ls) && FinLattice::leq(ls, s),
                [&] { return "f = " + show_elems(f, l); });
}

Witness exact_limits(Rng& rng) {
  FinLattice l = random_lattice(rng);
  OrdSeq f = random_seq(l, rng);
  return unless(liminf_omega(f, l) == liminf_brute(f, l) && limsup_omega(f, l) == limsup_brute(f, l),
                [&] { return "f = " + show_elems(f, l); });
}

std::vector<OrdSeq> random_family(const FinLattice& l, Rng& rng, unsigned count) {
  std::vector<OrdSeq> h;
  for (unsigned i = 0; i < count; ++i) h.push_back(random_seq(l, rng));
  return h;
}

std::string show_family(const std::vector<OrdSeq>& h, const FinLattice& l) {
  std::string out;
  for (std::size_t i = 0; i < h.size(); ++i) out += "h" + std::to_string(i) + " = " + show_elems(h[i], l) + "; ";
  return out;
}

Witness fact_sup_liminf(Rng& rng) {
  FinLattice l = random_lattice(rng);
  auto h = random_family(l, rng, uniform(rng, 1, 3));
  Elem lhs = 0;
  OrdSeq joined = h[0];
  for (const auto& hi : h) {
    lhs |= liminf_omega(hi, l);
    joined = zip_with(joined, hi, FinLattice::join);
  }
  return unless(FinLattice::leq(lhs, liminf_omega(joined, l)), [&] { return show_family(h, l); });
}

Witness fact_limsup_inf(Rng& rng) {
  FinLattice l = random_lattice(rng);
  auto h = random_family(l, rng, uniform(rng, 1, 3));
  Elem rhs = l.top();
  OrdSeq met = h[0];
  for (const auto& hi : h) {
    rhs &= limsup_omega(hi, l);
    met = zip_with(met, hi, FinLattice::meet);
  }
  return unless(FinLattice::leq(limsup_omega(met, l), rhs), [&] { return show_family(h, l); });
}

Witness fact_dependent_inf(Rng& rng) {
  FinLattice l = random_lattice(rng);
  unsigned k = uniform(rng, 1, 3);
  FinLattice index_lattice(k);
  auto h = random_family(l, rng, k);
  OrdSeq index = random_seq(index_lattice, rng);
  JointShape shape;
  shape.add(index);
  for (const auto& hi : h) shape.add(hi);
  OrdSeq dep = OrdSeq::from_function(shape.prefix, shape.cycle, [&](std::size_t n) {
    Elem acc = l.top();
    for (unsigned i = 0; i < k; ++i)
      if (index.at(n) >> i & 1U) acc &= h[i].at(n);
    return acc;
  });
  Elem j = liminf_omega(index, index_lattice);
  Elem rhs = l.top();
  for (unsigned i = 0; i < k; ++i)
    if (j >> i & 1U) rhs &= limsup_omega(h[i], l);
  return unless(FinLattice::leq(limsup_omega(dep, l), rhs),
                [&] { return show_family(h, l) + "I = " + show_elems(index, index_lattice); });
}

Witness limit_later_sup(Rng& rng) {
  FinLattice l = random_lattice(rng);
  OrdSeq f = random_seq(l, rng);
  std::size_t start = uniform(rng, 0, 8);
  Elem acc = l.top();
  for (std::size_t b = start; b <= start + f.prefix_len() + f.cycle_len(); ++b) acc &= tail_sup(f, b);
  return unless(acc == limsup_omega(f, l), [&] { return "f = " + show_elems(f, l) + ", a0 = " + std::to_string(start); });
}

Witness limit_later_inf(Rng& rng) {
  FinLattice l = random_lattice(rng);
  OrdSeq f = random_seq(l, rng);
  std::size_t start = uniform(rng, 0, 8);
  Elem acc = 0;
  for (std::size_t b = start; b <= start + f.prefix_len() + f.cycle_len(); ++b) acc |= tail_inf(f, b, l);
  return unless(acc == liminf_omega(f, l), [&] { return "f = " + show_elems(f, l) + ", a0 = " + std::to_string(start); });
}

// h(a, b) = rows[min(a, K)](b), with rows a chain in the first argument.
struct TwoIndexFamily {
  std::vector<OrdSeq> rows;
  [[nodiscard]] const OrdSeq& row(std::size_t a) const { return rows[std::min(a, rows.size() - 1)]; }
};

TwoIndexFamily chain_family(const FinLattice& l, Rng& rng, bool descending) {
  TwoIndexFamily h;
  h.rows.push_back(random_seq(l, rng));
  unsigned k = uniform(rng, 1, 4);
  for (unsigned i = 0; i < k; ++i)
    h.rows.push_back(zip_with(h.rows.back(), random_seq(l, rng), descending ? FinLattice::meet : FinLattice::join));
  return h;
}

OrdSeq diagonal(const TwoIndexFamily& h) {
  JointShape shape;
  shape.add(h.rows.back());
  shape.prefix = std::max(shape.prefix, h.rows.size());
  return OrdSeq::from_function(shape.prefix, shape.cycle, [&](std::size_t n) { return h.row(n).at(n); });
}

Witness split_limsup(Rng& rng) {
  FinLattice l = random_lattice(rng);
  TwoIndexFamily h = chain_family(l, rng, true);
  OrdSeq outer = OrdSeq::from_function(h.rows.size(), 1, [&](std::size_t a) { return limsup_omega(h.row(a), l); });
  return unless(FinLattice::leq(limsup_omega(diagonal(h), l), limsup_omega(outer, l)),
                [&] { return show_family(h.rows, l); });
}

Witness split_liminf(Rng& rng) {
  FinLattice l = random_lattice(rng);
  TwoIndexFamily h = chain_family(l, rng, false);
  OrdSeq outer = OrdSeq::from_function(h.rows.size(), 1, [&](std::size_t a) { return liminf_omega(h.row(a), l); });
  return unless(FinLattice::leq(liminf_omega(outer, l), liminf_omega(diagonal(h), l)),
                [&] { return show_family(h.rows, l); });
}

struct IndexedNu {
  FinLattice l;
  MonoOp f;
  std::vector<Ordinal> phi;
  Elem sup_nu = 0;
  Elem inf_nu;
  Elem nu_at_inf;
  Elem nu_at_sup;

  std::string describe() const {
    std::string out = "F = " + show_op(f) + ", phi =";
    for (auto o : phi) out += " " + show(o);
    return out;
  }
};

IndexedNu indexed_nu(Rng& rng) {
  FinLattice l = random_lattice(rng, 3);
  MonoOp f = MonoOp::random(l.base(), l.base(), rng);
  std::vector<Ordinal> phi(uniform(rng, 1, 5));
  for (auto& o : phi) o = random_ordinal(rng);
  IndexedNu r{l, f, phi, 0, l.top(), 0, 0};
  for (auto o : phi) {
    r.sup_nu |= nu(f, o);
    r.inf_nu &= nu(f, o);
  }
  r.nu_at_inf = nu(f, *std::min_element(phi.begin(), phi.end()));
  r.nu_at_sup = nu(f, *std::max_element(phi.begin(), phi.end()));
  return r;
}

Witness nu_sup_below(Rng& rng) {
  auto r = indexed_nu(rng);
  return unless(FinLattice::leq(r.sup_nu, r.nu_at_inf), [&] { return r.describe(); });
}
Witness nu_sup_above(Rng& rng) {
  auto r = indexed_nu(rng);
  return unless(FinLattice::leq(r.nu_at_inf, r.sup_nu), [&] { return r.describe(); });
}
Witness nu_inf_above(Rng& rng) {
  auto r = indexed_nu(rng);
  return unless(FinLattice::leq(r.nu_at_sup, r.inf_nu), [&] { return r.describe(); });
}
Witness nu_inf_below(Rng& rng) {
  auto r = indexed_nu(rng);
  return unless(FinLattice::leq(r.inf_nu, r.nu_at_sup), [&] { return r.describe(); });
}

Witness nu_limsup_equals(Rng& rng) {
  FinLattice l = random_lattice(rng, 3);
  MonoOp f = MonoOp::random(l.base(), l.base(), rng);
  OrdinalSeq phi = random_phi(rng);
  OrdSeq seq = OrdSeq::from_function(phi.prefix_len(), phi.cycle_len(), [&](std::size_t n) { return nu(f, phi.at(n)); });
  return unless(limsup_omega(seq, l) == nu(f, liminf_omega(phi)),
                [&] { return "F = " + show_op(f) + ", phi = " + show_phi(phi); });
}

// Family F_a(G)(X) given by a periodic choice among binary operators; g in the low bits.
struct OpFamily {
  std::vector<MonoOp> pool;
  OrdinalSeq choice;  // finite component indexes the pool

  [[nodiscard]] const MonoOp& at(std::size_t n) const { return pool[choice.at(n).finite]; }
  [[nodiscard]] std::vector<MonoOp> cycle_ops() const {
    std::vector<MonoOp> ops;
    for (auto o : choice.cycle()) ops.push_back(pool[o.finite]);
    return ops;
  }
  [[nodiscard]] std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < pool.size(); ++i) out += "F" + std::to_string(i) + " = " + show_op(pool[i]) + "; ";
    return out + "choice = " + show_phi(choice);
  }
};

OpFamily random_op_family(const FinLattice& l, Rng& rng) {
  OpFamily fam{{}, OrdinalSeq({}, {Ordinal{}})};
  unsigned k = uniform(rng, 1, 3);
  for (unsigned i = 0; i < k; ++i) fam.pool.push_back(MonoOp::random(2 * l.base(), l.base(), rng));
  std::vector<Ordinal> p(uniform(rng, 0, 3));
  std::vector<Ordinal> c(uniform(rng, 1, 3));
  for (auto& o : p) o = Ordinal::nat(uniform(rng, 0, k - 1));
  for (auto& o : c) o = Ordinal::nat(uniform(rng, 0, k - 1));
  fam.choice = OrdinalSeq(std::move(p), std::move(c));
  return fam;
}

struct Affine {
  unsigned slope;   // 0 or 1
  unsigned offset;
  [[nodiscard]] Ordinal at(std::size_t n) const { return Ordinal::nat(slope * static_cast<unsigned>(n) + offset); }
  [[nodiscard]] Ordinal at_omega() const { return slope ? Ordinal::omega(offset) : Ordinal::nat(offset); }
};

// limsup_a nu^phi(a) (F_a(G_a)) and the right-hand side nu^bound (F_w(limsup G)).
Witness nu_family(Rng& rng, bool affine) {
  FinLattice l = random_lattice(rng, 3);
  OpFamily fam = random_op_family(l, rng);
  OrdSeq g = random_seq(l, rng);
  OrdinalSeq phi = random_monotone_phi(rng);
  Affine aff{uniform(rng, 0, 1), uniform(rng, 0, 3)};
  JointShape shape;
  shape.add(fam.choice).add(g).add(phi);
  if (affine) shape.prefix += l.base() + 1;
  auto phi_at = [&](std::size_t n) { return affine ? aff.at(n) : phi.at(n); };
  OrdSeq lhs = OrdSeq::from_function(shape.prefix, shape.cycle, [&](std::size_t n) {
    return nu(fam.at(n).fix_low(g.at(n), l.base()), phi_at(n));
  });
  MonoOp limit_op = MonoOp::pointwise_join(fam.cycle_ops()).fix_low(limsup_omega(g, l), l.base());
  Ordinal bound = affine ? aff.at_omega() : liminf_omega(phi);
  return unless(FinLattice::leq(limsup_omega(lhs, l), nu(limit_op, bound)), [&] {
    return fam.describe() + "; G = " + show_elems(g, l) + "; phi = " +
           (affine ? std::to_string(aff.slope) + "a+" + std::to_string(aff.offset) : show_phi(phi));
  });
}

Witness nu_usc(Rng& rng) { return nu_family(rng, false); }
Witness nu_usc_affine(Rng& rng) { return nu_family(rng, true); }

Witness mu_family(Rng& rng, bool at_limit) {
  FinLattice l = random_lattice(rng, 3);
  OpFamily fam = random_op_family(l, rng);
  OrdSeq g = random_seq(l, rng);
  OrdinalSeq phi = random_monotone_phi(rng);
  JointShape shape;
  shape.add(fam.choice).add(g).add(phi);
  OrdSeq rhs = OrdSeq::from_function(shape.prefix, shape.cycle, [&](std::size_t n) {
    return mu(fam.at(n).fix_low(g.at(n), l.base()), phi.at(n));
  });
  MonoOp limit_op = MonoOp::pointwise_meet(fam.cycle_ops()).fix_low(liminf_omega(g, l), l.base());
  Ordinal bound = liminf_omega(phi);
  if (at_limit) {
    // Any value at the limit not above liminf phi keeps phi lower semi-continuous.
    std::vector<Ordinal> candidates;
    for (unsigned k = 0; k <= 6; ++k)
      if (Ordinal::nat(k) <= bound) candidates.push_back(Ordinal::nat(k));
    for (unsigned k = 0; k <= 2; ++k)
      if (Ordinal::omega(k) <= bound) candidates.push_back(Ordinal::omega(k));
    bound = candidates[uniform(rng, 0, static_cast<unsigned>(candidates.size() - 1))];
  }
  return unless(FinLattice::leq(mu(limit_op, bound), liminf_omega(rhs, l)), [&] {
    return fam.describe() + "; G = " + show_elems(g, l) + "; phi = " + show_phi(phi) + "; phi(w) = " + show(bound);
  });
}

Witness mu_lsc(Rng& rng) { return mu_family(rng, false); }
Witness mu_lsc_semicontinuous(Rng& rng) { return mu_family(rng, true); }

Witness limsup_function_space(Rng& rng) {
  FinLattice l = random_lattice(rng);
  Applicative app = Applicative::random(l.base(), rng);
  OrdSeq a = random_seq(l, rng);
  OrdSeq b = random_seq(l, rng);
  OrdSeq fn = zip_with(a, b, [&](Elem x, Elem y) { return app.arrow(x, y); });
  return unless(FinLattice::leq(limsup_omega(fn, l), app.arrow(liminf_omega(a, l), limsup_omega(b, l))),
                [&] { return "A = " + show_elems(a, l) + "; B = " + show_elems(b, l); });
}

Witness function_space_usc(Rng& rng) {
  FinLattice l = random_lattice(rng);
  Applicative app = Applicative::random(l.base(), rng);
  OrdSeq a = random_seq(l, rng);
  OrdSeq b = random_seq(l, rng);
  Elem a_limit = liminf_omega(a, l) & random_elem(l, rng);
  Elem b_limit = limsup_omega(b, l) | random_elem(l, rng);
  OrdSeq fn = zip_with(a, b, [&](Elem x, Elem y) { return app.arrow(x, y); });
  return unless(FinLattice::leq(limsup_omega(fn, l), app.arrow(a_limit, b_limit)),
                [&] { return "A = " + show_elems(a, l) + "; B = " + show_elems(b, l); });
}

Witness iteration_closes(Rng& rng) {
  FinLattice l = random_lattice(rng, 3);
  MonoOp f = MonoOp::random(l.base(), l.base(), rng);
  bool ok = mu(f, Ordinal::omega(1)) == mu(f, Ordinal::omega()) && nu(f, Ordinal::omega(1)) == nu(f, Ordinal::omega());
  Elem inf_nu = l.top();
  for (unsigned n = 0; n <= l.base() + 1; ++n) inf_nu &= nu(f, Ordinal::nat(n));
  ok = ok && inf_nu == nu(f, Ordinal::omega());
  return unless(ok, [&] { return "F = " + show_op(f); });
}

// Inductive family F_a(X) = N + (A_a => X) with A_a ascending; limsup_a mu^phi(a) F_a below
// mu^(liminf phi) F_w would mirror the coinductive result.
Witness hungry_mu(Rng& rng) {
  FinLattice l = random_lattice(rng);
  Applicative app = Applicative::random(l.base(), rng);
  Elem neutral = random_elem(l, rng);
  OrdSeq a = random_ascending(l, rng);
  OrdinalSeq phi = random_phi(rng);
  auto family = [&](Elem dom) {
    std::vector<Elem> t(l.size());
    for (Elem x = 0; x < t.size(); ++x) t[x] = neutral | app.arrow(dom, x);
    return MonoOp(l.base(), l.base(), std::move(t));
  };
  JointShape shape;
  shape.add(a).add(phi);
  OrdSeq lhs = OrdSeq::from_function(shape.prefix, shape.cycle, [&](std::size_t n) { return mu(family(a.at(n)), phi.at(n)); });
  Elem rhs = mu(family(liminf_omega(a, l)), liminf_omega(phi));
  return unless(FinLattice::leq(limsup_omega(lhs, l), rhs), [&] {
    return "N = " + show(neutral, l.base()) + "; A = " + show_elems(a, l) + "; phi = " + show_phi(phi) +
           "; limsup = " + show(limsup_omega(lhs, l), l.base()) + " vs " + show(rhs, l.base());
  });
}

struct Suite {
  const char* id;
  const char* statement;
  Witness (*run)(Rng&);
  bool expect_failure = false;
};

const Suite kSuites[] = {
    {"sandwich", "inf <= liminf <= limsup <= sup", sandwich},
    {"limits-exact", "liminf/limsup from prefix+cycle equal the truncated double sup/inf", exact_limits},
    {"fact-sup-liminf", "sup_i liminf h(-,i) <= liminf sup_i h(-,i)", fact_sup_liminf},
    {"fact-limsup-inf", "limsup inf_i h(-,i) <= inf_i limsup h(-,i)", fact_limsup_inf},
    {"fact-dependent-inf", "limsup inf_{i in I(a)} h(a,i) <= inf_{i in liminf I} limsup h(-,i)", fact_dependent_inf},
    {"later-limsup", "inf_{b0>=a0} sup_{b>=b0} f(b) = limsup f", limit_later_sup},
    {"later-liminf", "sup_{b0>=a0} inf_{b>=b0} f(b) = liminf f", limit_later_inf},
    {"split-limsup", "limsup h(b,b) <= limsup_a limsup_b h(a,b), h antitone in a", split_limsup},
    {"split-liminf", "liminf_a liminf_b h(a,b) <= liminf h(b,b), h monotone in a", split_liminf},
    {"nu-sup-below", "sup_I nu^phi <= nu^(inf_I phi)", nu_sup_below},
    {"nu-sup-above", "sup_I nu^phi >= nu^(inf_I phi)", nu_sup_above},
    {"nu-inf-above", "inf_I nu^phi >= nu^(sup_I phi)", nu_inf_above},
    {"nu-inf-below", "inf_I nu^phi <= nu^(sup_I phi)", nu_inf_below},
    {"nu-limsup-exact", "limsup nu^phi(a) = nu^(liminf phi)", nu_limsup_equals},
    {"nu-upper-semicontinuous", "limsup nu^phi(a) F_a(G_a) <= nu^(liminf phi) F_w(limsup G)", nu_usc},
    {"nu-upper-semicontinuous-affine", "limsup nu^phi(a) F_a(G_a) <= nu^phi(w) F_w(limsup G), phi affine", nu_usc_affine},
    {"mu-lower-semicontinuous", "mu^(liminf phi) F_w(liminf G) <= liminf mu^phi(a) F_a(G_a)", mu_lsc},
    {"mu-lower-semicontinuous-limit", "mu^phi(w) F_w(liminf G) <= liminf mu^phi(a) F_a(G_a), phi(w) <= liminf phi",
     mu_lsc_semicontinuous},
    {"limsup-function-space", "limsup (A_a => B_a) <= liminf A => limsup B", limsup_function_space},
    {"function-space-usc", "A(w) <= liminf A, limsup B <= B(w) imply limsup (A => B) <= A(w) => B(w)",
     function_space_usc},
    {"iteration-closes", "mu^(w+1) = mu^w, nu^(w+1) = nu^w, nu^w = inf_n nu^n", iteration_closes},
    {"hungry-mu-negative", "limsup mu^phi(a) (N + A_a => -) <= mu^(liminf phi) (N + liminf A => -)", hungry_mu, true},
};

std::uint64_t suite_seed(std::uint64_t seed, const char* id, std::size_t trial) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = id; *p; ++p) h = (h ^ static_cast<unsigned char>(*p)) * 1099511628211ULL;
  return seed * 0x9E3779B97F4A7C15ULL + h + trial;
}

}  // namespace

LabReport check_section_limits(std::size_t trials, std::uint64_t seed) {
  LabReport report;
  for (const auto& suite : kSuites) {
    LemmaReport r{suite.id, suite.statement, trials, 0, {}, suite.expect_failure};
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(suite_seed(seed, suite.id, t));
      if (auto w = suite.run(rng)) {
        if (r.failures++ == 0) r.witness = *w;
      }
    }
    report.lemmas.push_back(std::move(r));
  }
  return report;
}

}  // namespace fwh::lab
