#include "fwh/context.hpp"

#include <algorithm>

namespace fwh {

KindContext KindContext::extended(std::string name, Polarity p, Kind k) const {
  KindContext copy = *this;
  copy.push(std::move(name), p, std::move(k));
  return copy;
}

void KindContext::push(std::string name, Polarity p, Kind k) {
  entries_.push_back(KindBinding{std::move(name), p, std::move(k)});
}

const KindBinding* KindContext::lookup(std::string_view name) const {
  auto it = std::find_if(entries_.rbegin(), entries_.rend(), [&](const KindBinding& b) { return b.name == name; });
  return it == entries_.rend() ? nullptr : &*it;
}

KindContext KindContext::without(std::string_view name) const {
  KindContext out;
  for (const auto& b : entries_)
    if (b.name != name) out.entries_.push_back(b);
  return out;
}

KindContext invert_context(Polarity p, const KindContext& delta) {
  if (p == Polarity::plus) return delta;
  std::vector<KindBinding> out;
  for (const auto& b : delta.entries()) {
    if (p == Polarity::minus) {
      out.push_back(KindBinding{b.name, compose_polarity(Polarity::minus, b.polarity), b.kind});
    } else if (b.polarity == Polarity::mixed) {
      out.push_back(b);
    }
  }
  return KindContext(std::move(out));
}

TypingContext TypingContext::with_term(std::string x, Con type) const {
  TypingContext copy = *this;
  copy.entries_.push_back(Entry{true, TermBinding{std::move(x), std::move(type)}, {}});
  return copy;
}

TypingContext TypingContext::with_type(std::string x, Kind k, Polarity p) const {
  TypingContext copy = *this;
  copy.entries_.push_back(Entry{false, {}, TypeBinding{std::move(x), p, std::move(k)}});
  return copy;
}

const TermBinding* TypingContext::lookup_term(std::string_view x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->is_term && it->term.name == x) return &it->term;
  return nullptr;
}

KindContext TypingContext::kind_context() const {
  KindContext out;
  for (const auto& e : entries_)
    if (!e.is_term) out.push(e.type.name, e.type.polarity, e.type.kind);
  return out;
}

bool TypingContext::mentions(std::string_view x) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.is_term ? e.term.name == x : e.type.name == x;
  });
}

}  // namespace fwh
