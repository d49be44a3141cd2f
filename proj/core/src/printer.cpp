#include <sstream>

#include "fwh/syntax.hpp"

namespace fwh {
namespace {

// Constructor precedence: binder < arrow < sum < product < application < atom.
enum Level { kBinder, kArrow, kSum, kProd, kApp, kAtom };

std::string paren_if(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

std::string binder(const std::string& x, const std::optional<Kind>& k) {
  return k ? x + ":" + to_string(*k) : x;
}

std::string con(const Con& c, Level need);

std::string con_spine(const Con& c, Level need) {
  Spine sp = spine_of(c);
  const Con& h = sp.head;
  auto general = [&](std::string head) {
    if (sp.args.empty()) return head;
    for (const auto& a : sp.args) head += " " + con(a, kAtom);
    return paren_if(need > kApp, head);
  };
  if (h.tag() == Con::Tag::constant) {
    switch (h.const_name()) {
      case ConstName::arrow:
        if (sp.args.size() == 2)
          return paren_if(need > kArrow, con(sp.args[0], kSum) + " -> " + con(sp.args[1], kArrow));
        return general("(->)");
      case ConstName::sum:
        if (sp.args.size() == 2)
          return paren_if(need > kSum, con(sp.args[0], kProd) + " + " + con(sp.args[1], kSum));
        return general("(+)");
      case ConstName::prod:
        if (sp.args.size() == 2)
          return paren_if(need > kProd, con(sp.args[0], kApp) + " * " + con(sp.args[1], kProd));
        return general("(*)");
      case ConstName::forall:
        if (sp.args.size() == 1 && sp.args[0].tag() == Con::Tag::lam) {
          const Con& l = sp.args[0];
          return paren_if(need > kBinder, "all " + binder(l.name(), l.binder_kind()) + ". " + con(l.body(), kBinder));
        }
        return general("all");
      case ConstName::mu:
      case ConstName::nu: {
        std::string head = h.const_name() == ConstName::mu ? "mu" : "nu";
        if (sp.args.empty()) return head;
        head += "[" + con(sp.args[0], kBinder) + "]";
        if (sp.args.size() == 1) return head;
        for (std::size_t i = 1; i < sp.args.size(); ++i) head += " " + con(sp.args[i], kAtom);
        return paren_if(need > kApp, head);
      }
      case ConstName::unit: return general("1");
      case ConstName::infty: return general("oo");
      case ConstName::succ: return general("s");
    }
  }
  return general(con(h, kAtom));
}

std::string con(const Con& c, Level need) {
  switch (c.tag()) {
    case Con::Tag::var: return c.name();
    case Con::Tag::lam:
      return paren_if(need > kBinder, "\\" + binder(c.name(), c.binder_kind()) + ". " + con(c.body(), kBinder));
    case Con::Tag::constant:
    case Con::Tag::app: return con_spine(c, need);
  }
  return "?";
}

// Term precedence: binder < application < atom.
enum TermLevel { tBinder, tApp, tAtom };

std::string term(const Term& t, TermLevel need);

std::string term_spine_text(const Term& t, TermLevel need) {
  TermSpine sp = term_spine(t);
  bool pair_sugar = sp.head.is_const(TermConst::pair) && sp.args.size() == 2 && !sp.args[0].is_type && !sp.args[1].is_type;
  if (pair_sugar) return "<" + term(*sp.args[0].term, tBinder) + ", " + term(*sp.args[1].term, tBinder) + ">";
  std::string out = term(sp.head, sp.head.tag() == Term::Tag::fix ? tApp : tAtom);
  for (const auto& a : sp.args) out += a.is_type ? " [" + con(*a.type, kBinder) + "]" : " " + term(*a.term, tAtom);
  return paren_if(need > tApp, out);
}

std::string term(const Term& t, TermLevel need) {
  switch (t.tag()) {
    case Term::Tag::var: return t.name();
    case Term::Tag::constant: return std::string(to_string(t.const_value()));
    case Term::Tag::lam: {
      std::string head = "\\" + t.name();
      if (t.type()) head += ":" + con(*t.type(), kBinder);
      return paren_if(need > tBinder, head + ". " + term(t.body(), tBinder));
    }
    case Term::Tag::ty_lam:
      return paren_if(need > tBinder, "/\\" + t.name() + ":" + to_string(t.kind()) + ". " + term(t.body(), tBinder));
    case Term::Tag::anno: return "(" + term(t.inner(), tBinder) + " : " + con(*t.type(), kBinder) + ")";
    case Term::Tag::fix: {
      std::string out = (t.flavor() == Flavor::mu ? "fixmu " : "fixnu ") + std::to_string(t.arity());
      if (t.type()) out += " [" + con(*t.type(), kBinder) + "]";
      out += " " + term(t.functional(), tAtom);
      return paren_if(need > tApp, out);
    }
    case Term::Tag::app:
    case Term::Tag::ty_app: return term_spine_text(t, need);
  }
  return "?";
}

}  // namespace

std::string to_string(const Con& c) { return con(c, kBinder); }
std::string to_string(const Term& t) { return term(t, tBinder); }

std::string to_string(const Decl& d) {
  if (const auto* td = std::get_if<TypeDecl>(&d)) {
    std::string out = "type " + td->name;
    if (td->kind) out += " : " + to_string(*td->kind);
    return out + " = " + to_string(td->body);
  }
  const auto& dd = std::get<DefDecl>(d);
  if (!dd.body) return "assume " + dd.name + " : " + to_string(*dd.type);
  std::string out = "def " + dd.name;
  if (dd.type) out += " : " + to_string(*dd.type);
  return out + " = " + to_string(*dd.body);
}

std::string to_string(const SourceFile& f) {
  std::ostringstream os;
  for (const auto& d : f.decls) os << to_string(d) << "\n\n";
  return os.str();
}

}  // namespace fwh
