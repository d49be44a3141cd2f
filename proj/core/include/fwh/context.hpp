#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fwh/constructor.hpp"

namespace fwh {

struct KindBinding {
  std::string name;
  Polarity polarity;
  Kind kind;
  friend bool operator==(const KindBinding&, const KindBinding&) = default;
};

// Ordered kind bindings; lookup returns the rightmost match.
class KindContext {
 public:
  KindContext() = default;
  explicit KindContext(std::vector<KindBinding> entries) : entries_(std::move(entries)) {}

  [[nodiscard]] KindContext extended(std::string name, Polarity p, Kind k) const;
  void push(std::string name, Polarity p, Kind k);
  [[nodiscard]] const KindBinding* lookup(std::string_view name) const;
  [[nodiscard]] bool binds(std::string_view name) const { return lookup(name) != nullptr; }
  [[nodiscard]] KindContext without(std::string_view name) const;
  [[nodiscard]] const std::vector<KindBinding>& entries() const noexcept { return entries_; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const KindContext&, const KindContext&) = default;

 private:
  std::vector<KindBinding> entries_;
};

// p^-1 Delta: + keeps, - negates, o keeps only o-bindings.
[[nodiscard]] KindContext invert_context(Polarity p, const KindContext& delta);

struct TermBinding {
  std::string name;
  Con type;
};

struct TypeBinding {
  std::string name;
  Polarity polarity;
  Kind kind;
};

class TypingContext {
 public:
  struct Entry {
    bool is_term;
    TermBinding term;
    TypeBinding type;
  };

  [[nodiscard]] TypingContext with_term(std::string x, Con type) const;
  [[nodiscard]] TypingContext with_type(std::string x, Kind k, Polarity p = Polarity::mixed) const;
  [[nodiscard]] const TermBinding* lookup_term(std::string_view x) const;
  [[nodiscard]] KindContext kind_context() const;
  [[nodiscard]] bool mentions(std::string_view x) const;
  [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace fwh
