#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwh::lab {

// Elements of a powerset lattice as bitmasks over the base set.
using Elem = std::uint32_t;

class FinLattice {
 public:
  explicit FinLattice(unsigned base);

  [[nodiscard]] unsigned base() const noexcept { return base_; }
  [[nodiscard]] std::size_t size() const noexcept { return std::size_t{1} << base_; }
  [[nodiscard]] Elem bottom() const noexcept { return 0; }
  [[nodiscard]] Elem top() const noexcept { return static_cast<Elem>(size() - 1); }
  [[nodiscard]] static Elem meet(Elem a, Elem b) noexcept { return a & b; }
  [[nodiscard]] static Elem join(Elem a, Elem b) noexcept { return a | b; }
  [[nodiscard]] static bool leq(Elem a, Elem b) noexcept { return (a & ~b) == 0; }
  [[nodiscard]] bool contains(Elem a) const noexcept { return (a & ~top()) == 0; }

 private:
  unsigned base_;
};

[[nodiscard]] std::string show(Elem e, unsigned base);

// Ordinals up to omega + k.
struct Ordinal {
  unsigned omegas = 0;  // 0 or 1
  unsigned finite = 0;

  [[nodiscard]] static Ordinal nat(unsigned n) { return {0, n}; }
  [[nodiscard]] static Ordinal omega(unsigned plus = 0) { return {1, plus}; }
  [[nodiscard]] bool is_limit() const noexcept { return omegas == 1 && finite == 0; }
  auto operator<=>(const Ordinal&) const = default;
};

[[nodiscard]] std::string show(Ordinal o);

// Eventually periodic function on omega: prefix, then cycle repeated forever.
template <typename T>
class Periodic {
 public:
  Periodic(std::vector<T> prefix, std::vector<T> cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw std::invalid_argument("periodic sequence needs a non-empty cycle");
  }

  // fn is sampled on [0, prefix_len + cycle_len) and assumed periodic from prefix_len on.
  template <typename Fn>
  [[nodiscard]] static Periodic from_function(std::size_t prefix_len, std::size_t cycle_len, Fn&& fn) {
    std::vector<T> p;
    std::vector<T> c;
    for (std::size_t n = 0; n < prefix_len; ++n) p.push_back(fn(n));
    for (std::size_t n = 0; n < cycle_len; ++n) c.push_back(fn(prefix_len + n));
    return Periodic(std::move(p), std::move(c));
  }

  [[nodiscard]] const T& at(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return cycle_[(n - prefix_.size()) % cycle_.size()];
  }
  [[nodiscard]] const std::vector<T>& prefix() const noexcept { return prefix_; }
  [[nodiscard]] const std::vector<T>& cycle() const noexcept { return cycle_; }
  [[nodiscard]] std::size_t prefix_len() const noexcept { return prefix_.size(); }
  [[nodiscard]] std::size_t cycle_len() const noexcept { return cycle_.size(); }

 private:
  std::vector<T> prefix_;
  std::vector<T> cycle_;
};

using OrdSeq = Periodic<Elem>;
using OrdinalSeq = Periodic<Ordinal>;

// Shape large enough to sample several periodic sequences jointly.
struct JointShape {
  std::size_t prefix = 0;
  std::size_t cycle = 1;

  template <typename T>
  JointShape& add(const Periodic<T>& s) {
    prefix = std::max(prefix, s.prefix_len());
    cycle = std::lcm(cycle, s.cycle_len());
    return *this;
  }
};

[[nodiscard]] OrdSeq zip_with(const OrdSeq& a, const OrdSeq& b, const std::function<Elem(Elem, Elem)>& op);

[[nodiscard]] Elem inf_omega(const OrdSeq& f, const FinLattice& l);
[[nodiscard]] Elem sup_omega(const OrdSeq& f, const FinLattice& l);
[[nodiscard]] Elem liminf_omega(const OrdSeq& f, const FinLattice& l);
[[nodiscard]] Elem limsup_omega(const OrdSeq& f, const FinLattice& l);
// sup/inf of f over [from, infinity).
[[nodiscard]] Elem tail_sup(const OrdSeq& f, std::size_t from);
[[nodiscard]] Elem tail_inf(const OrdSeq& f, std::size_t from, const FinLattice& l);
// Defining double sup/inf, truncated at start points below prefix + 2 cycles.
[[nodiscard]] Elem liminf_brute(const OrdSeq& f, const FinLattice& l);
[[nodiscard]] Elem limsup_brute(const OrdSeq& f, const FinLattice& l);

[[nodiscard]] Ordinal liminf_omega(const OrdinalSeq& phi);
[[nodiscard]] Ordinal limsup_omega(const OrdinalSeq& phi);

// Monotone map from a powerset lattice to another; the table is checked on construction.
class MonoOp {
 public:
  MonoOp(unsigned in_bits, unsigned out_bits, std::vector<Elem> table);

  // Smallest monotone map above a random table.
  [[nodiscard]] static MonoOp random(unsigned in_bits, unsigned out_bits, std::mt19937_64& rng);

  [[nodiscard]] Elem operator()(Elem x) const { return table_.at(x); }
  [[nodiscard]] unsigned in_bits() const noexcept { return in_bits_; }
  [[nodiscard]] unsigned out_bits() const noexcept { return out_bits_; }
  [[nodiscard]] const std::vector<Elem>& table() const noexcept { return table_; }

  // For a map on pairs (g in the low bits, x in the high bits), fixes g.
  [[nodiscard]] MonoOp fix_low(Elem g, unsigned g_bits) const;
  [[nodiscard]] static MonoOp pointwise_join(const std::vector<MonoOp>& ops);
  [[nodiscard]] static MonoOp pointwise_meet(const std::vector<MonoOp>& ops);

  [[nodiscard]] static bool is_monotone(unsigned in_bits, const std::vector<Elem>& table);

 private:
  unsigned in_bits_;
  unsigned out_bits_;
  std::vector<Elem> table_;
};

// f^0 = start, f^(a+1) = f(f^a), f^omega = limsup of the finite iterates.
[[nodiscard]] Elem iterate(const MonoOp& f, Elem start, Ordinal alpha);
[[nodiscard]] Elem mu(const MonoOp& f, Ordinal alpha);
[[nodiscard]] Elem nu(const MonoOp& f, Ordinal alpha);

// Function space over a base set of terms with an application table:
// arrow(a, b) = { r | for all s in a, app(r, s) in b }.
class Applicative {
 public:
  Applicative(unsigned base, std::vector<unsigned> app);
  [[nodiscard]] static Applicative random(unsigned base, std::mt19937_64& rng);
  [[nodiscard]] Elem arrow(Elem a, Elem b) const;
  [[nodiscard]] unsigned base() const noexcept { return base_; }

 private:
  unsigned base_;
  std::vector<unsigned> app_;  // app_[r * base + s]
};

struct LemmaReport {
  std::string id;
  std::string statement;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string witness;         // first failing instance
  bool expect_failure = false;  // negative control: passes when a failure is found

  [[nodiscard]] bool passed() const noexcept { return expect_failure ? failures > 0 : failures == 0; }
};

struct LabReport {
  std::vector<LemmaReport> lemmas;
  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::string text() const;
};

[[nodiscard]] LabReport check_section_limits(std::size_t trials, std::uint64_t seed);

}  // namespace fwh::lab
