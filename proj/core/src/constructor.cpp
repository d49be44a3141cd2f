#include "fwh/constructor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fwh {

std::string_view to_string(ConstName c) noexcept {
  switch (c) {
    case ConstName::unit: return "1";
    case ConstName::sum: return "(+)";
    case ConstName::prod: return "(*)";
    case ConstName::arrow: return "(->)";
    case ConstName::forall: return "all";
    case ConstName::mu: return "mu";
    case ConstName::nu: return "nu";
    case ConstName::succ: return "s";
    case ConstName::infty: return "oo";
  }
  return "?";
}

namespace {
std::shared_ptr<const Con::Node> make_node(Con::Node n) { return std::make_shared<const Con::Node>(std::move(n)); }
}  // namespace

Con::Con() {
  static const auto unit_node = [] {
    Node n;
    n.tag = Tag::constant;
    n.constant = ConstName::unit;
    return std::make_shared<const Node>(std::move(n));
  }();
  node_ = unit_node;
}

Con Con::constant(ConstName c, std::optional<Kind> index) {
  if (index && (c == ConstName::mu || c == ConstName::nu) && !index->pure())
    throw std::invalid_argument("mu/nu require a pure kind, got " + to_string(*index));
  if (index && c != ConstName::mu && c != ConstName::nu && c != ConstName::forall)
    throw std::invalid_argument("only forall, mu and nu carry a kind index");
  Node n;
  n.tag = Tag::constant;
  n.constant = c;
  n.kind = std::move(index);
  return Con(make_node(std::move(n)));
}

Con Con::var(std::string name) {
  Node n;
  n.tag = Tag::var;
  n.name = std::move(name);
  return Con(make_node(std::move(n)));
}

Con Con::lam(std::string binder, std::optional<Kind> binder_kind, Con body) {
  Node n;
  n.tag = Tag::lam;
  n.name = std::move(binder);
  n.kind = std::move(binder_kind);
  n.left = std::move(body);
  return Con(make_node(std::move(n)));
}

Con Con::app(Con fun, Con arg) {
  Node n;
  n.tag = Tag::app;
  n.left = std::move(fun);
  n.right = std::move(arg);
  return Con(make_node(std::move(n)));
}

Con::Tag Con::tag() const noexcept { return node_->tag; }

bool Con::is_const(ConstName c) const noexcept { return node_->tag == Tag::constant && node_->constant == c; }

ConstName Con::const_name() const {
  if (tag() != Tag::constant) throw std::logic_error("const_name() on a non-constant");
  return node_->constant;
}

const std::optional<Kind>& Con::index_kind() const {
  if (tag() != Tag::constant) throw std::logic_error("index_kind() on a non-constant");
  return node_->kind;
}

const std::string& Con::name() const {
  if (tag() != Tag::var && tag() != Tag::lam) throw std::logic_error("name() on a non-binder");
  return node_->name;
}

const std::optional<Kind>& Con::binder_kind() const {
  if (tag() != Tag::lam) throw std::logic_error("binder_kind() on a non-lambda");
  return node_->kind;
}

const Con& Con::body() const {
  if (tag() != Tag::lam) throw std::logic_error("body() on a non-lambda");
  return node_->left;
}

const Con& Con::fun() const {
  if (tag() != Tag::app) throw std::logic_error("fun() on a non-application");
  return node_->left;
}

const Con& Con::arg() const {
  if (tag() != Tag::app) throw std::logic_error("arg() on a non-application");
  return node_->right;
}

namespace types {
Con unit() { return Con::constant(ConstName::unit); }
Con infty() { return Con::constant(ConstName::infty); }
Con succ(Con a) { return Con::app(Con::constant(ConstName::succ), std::move(a)); }
Con arrow(Con a, Con b) { return Con::app(Con::app(Con::constant(ConstName::arrow), std::move(a)), std::move(b)); }
Con sum(Con a, Con b) { return Con::app(Con::app(Con::constant(ConstName::sum), std::move(a)), std::move(b)); }
Con prod(Con a, Con b) { return Con::app(Con::app(Con::constant(ConstName::prod), std::move(a)), std::move(b)); }
Con forall(std::string binder, Kind k, Con body) {
  Con lam = Con::lam(std::move(binder), k, std::move(body));
  return Con::app(Con::constant(ConstName::forall, std::move(k)), std::move(lam));
}
Con mu(Con size, Con functor, std::optional<Kind> k) {
  return Con::app(Con::app(Con::constant(ConstName::mu, std::move(k)), std::move(size)), std::move(functor));
}
Con nu(Con size, Con functor, std::optional<Kind> k) {
  return Con::app(Con::app(Con::constant(ConstName::nu, std::move(k)), std::move(size)), std::move(functor));
}
Con apply(Con head, std::span<const Con> args) {
  for (const Con& a : args) head = Con::app(std::move(head), a);
  return head;
}
}  // namespace types

Spine spine_of(const Con& c) {
  Spine s{c, {}};
  while (s.head.tag() == Con::Tag::app) {
    s.args.push_back(s.head.arg());
    Con f = s.head.fun();
    s.head = std::move(f);
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

namespace {
void collect_free(const Con& c, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (c.tag()) {
    case Con::Tag::constant: return;
    case Con::Tag::var:
      if (!bound.contains(c.name())) out.insert(c.name());
      return;
    case Con::Tag::lam: {
      const bool inserted = bound.insert(c.name()).second;
      collect_free(c.body(), bound, out);
      if (inserted) bound.erase(c.name());
      return;
    }
    case Con::Tag::app:
      collect_free(c.fun(), bound, out);
      collect_free(c.arg(), bound, out);
      return;
  }
}
}  // namespace

std::set<std::string> free_vars(const Con& c) {
  std::set<std::string> bound, out;
  collect_free(c, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const Con& c) {
  switch (c.tag()) {
    case Con::Tag::constant: return false;
    case Con::Tag::var: return c.name() == x;
    case Con::Tag::lam: return c.name() != x && occurs_free(x, c.body());
    case Con::Tag::app: return occurs_free(x, c.fun()) || occurs_free(x, c.arg());
  }
  return false;
}

namespace {
Con subst_impl(const Con& g, const std::string& x, const std::set<std::string>& g_free, const Con& c) {
  switch (c.tag()) {
    case Con::Tag::constant: return c;
    case Con::Tag::var: return c.name() == x ? g : c;
    case Con::Tag::app: {
      Con f = subst_impl(g, x, g_free, c.fun());
      Con a = subst_impl(g, x, g_free, c.arg());
      if (f.same_node(c.fun()) && a.same_node(c.arg())) return c;
      return Con::app(std::move(f), std::move(a));
    }
    case Con::Tag::lam: {
      if (c.name() == x || !occurs_free(x, c.body())) return c;
      if (!g_free.contains(c.name())) {
        Con b = subst_impl(g, x, g_free, c.body());
        return Con::lam(c.name(), c.binder_kind(), std::move(b));
      }
      const std::set<std::string> body_free = free_vars(c.body());
      const std::string y = fresh_name(c.name(), [&](const std::string& n) {
        return g_free.contains(n) || body_free.contains(n) || n == x;
      });
      Con renamed = rename_var(c.body(), c.name(), y);
      return Con::lam(y, c.binder_kind(), subst_impl(g, x, g_free, renamed));
    }
  }
  return c;
}
}  // namespace

Con subst_constructor(const Con& g, const std::string& x, const Con& c) {
  if (!occurs_free(x, c)) return c;
  return subst_impl(g, x, free_vars(g), c);
}

Con rename_var(const Con& body, const std::string& x, const std::string& y) {
  if (x == y) return body;
  return subst_constructor(Con::var(y), x, body);
}

namespace {
using BinderMap = std::map<std::string, std::vector<int>>;

int lookup_level(const BinderMap& m, const std::string& x) {
  auto it = m.find(x);
  return it == m.end() || it->second.empty() ? -1 : it->second.back();
}

bool alpha_impl(const Con& a, const Con& b, BinderMap& left, BinderMap& right, int depth) {
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Con::Tag::constant:
      return a.const_name() == b.const_name() && a.index_kind() == b.index_kind();
    case Con::Tag::var: {
      const int la = lookup_level(left, a.name());
      const int lb = lookup_level(right, b.name());
      if (la != lb) return false;
      return la >= 0 || a.name() == b.name();
    }
    case Con::Tag::lam: {
      if (a.binder_kind() != b.binder_kind()) return false;
      left[a.name()].push_back(depth);
      right[b.name()].push_back(depth);
      const bool ok = alpha_impl(a.body(), b.body(), left, right, depth + 1);
      left[a.name()].pop_back();
      right[b.name()].pop_back();
      return ok;
    }
    case Con::Tag::app:
      return alpha_impl(a.fun(), b.fun(), left, right, depth) && alpha_impl(a.arg(), b.arg(), left, right, depth);
  }
  return false;
}
}  // namespace

bool alpha_eq(const Con& a, const Con& b) {
  if (a.same_node(b)) return true;
  BinderMap left, right;
  return alpha_impl(a, b, left, right, 0);
}

}  // namespace fwh
