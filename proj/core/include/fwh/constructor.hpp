#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fwh/kind.hpp"

namespace fwh {

enum class ConstName : std::uint8_t { unit, sum, prod, arrow, forall, mu, nu, succ, infty };

// Inductive or coinductive.
enum class Flavor : std::uint8_t { mu, nu };

[[nodiscard]] std::string_view to_string(ConstName c) noexcept;

// Type-level expression: constants, variables, lambdas, applications.
// Immutable and shared; copying a Con copies a pointer.
class Con {
 public:
  enum class Tag : std::uint8_t { constant, var, lam, app };

  Con();  // the unit type
  static Con constant(ConstName c, std::optional<Kind> index = std::nullopt);
  static Con var(std::string name);
  static Con lam(std::string binder, std::optional<Kind> binder_kind, Con body);
  static Con app(Con fun, Con arg);

  [[nodiscard]] Tag tag() const noexcept;
  [[nodiscard]] bool is_const(ConstName c) const noexcept;

  [[nodiscard]] ConstName const_name() const;
  // Kind index of forall/mu/nu; empty until elaboration fills it.
  [[nodiscard]] const std::optional<Kind>& index_kind() const;
  [[nodiscard]] const std::string& name() const;  // var name or lambda binder
  [[nodiscard]] const std::optional<Kind>& binder_kind() const;
  [[nodiscard]] const Con& body() const;
  [[nodiscard]] const Con& fun() const;
  [[nodiscard]] const Con& arg() const;

  [[nodiscard]] bool same_node(const Con& other) const noexcept { return node_ == other.node_; }

 struct Node;

 private:
  explicit Con(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Con::Node {
  Tag tag = Tag::constant;
  ConstName constant = ConstName::unit;
  std::optional<Kind> kind;  // index kind or binder kind
  std::string name;
  Con left;   // lam body or app function
  Con right;  // app argument
  Node() : left(nullptr), right(nullptr) {}
};

// Builders for the common shapes.
namespace types {
Con unit();
Con infty();
Con succ(Con a);
Con arrow(Con a, Con b);
Con sum(Con a, Con b);
Con prod(Con a, Con b);
Con forall(std::string binder, Kind k, Con body);
Con mu(Con size, Con functor, std::optional<Kind> k = std::nullopt);
Con nu(Con size, Con functor, std::optional<Kind> k = std::nullopt);
Con apply(Con head, std::span<const Con> args);
}  // namespace types

struct Spine {
  Con head;
  std::vector<Con> args;
};
[[nodiscard]] Spine spine_of(const Con& c);

[[nodiscard]] std::set<std::string> free_vars(const Con& c);
[[nodiscard]] bool occurs_free(const std::string& x, const Con& c);

// First of base, base1, base2, ... not rejected by `taken`.
template <typename Taken>
[[nodiscard]] std::string fresh_name(const std::string& base, Taken&& taken) {
  if (!taken(base)) return base;
  std::string stem = base;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
  if (stem.empty()) stem = "v";
  for (unsigned i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

// [g/x]c, capture-avoiding.
[[nodiscard]] Con subst_constructor(const Con& g, const std::string& x, const Con& c);
// Renames a bound variable: body with x replaced by the variable y.
[[nodiscard]] Con rename_var(const Con& body, const std::string& x, const std::string& y);

[[nodiscard]] bool alpha_eq(const Con& a, const Con& b);

[[nodiscard]] std::string to_string(const Con& c);

}  // namespace fwh
