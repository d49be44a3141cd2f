#pragma once

#include <cstdint>
#include <string_view>

namespace fwh {

enum class Polarity : std::uint8_t { plus, minus, mixed };

[[nodiscard]] constexpr Polarity compose_polarity(Polarity p, Polarity q) noexcept {
  if (p == Polarity::mixed || q == Polarity::mixed) return Polarity::mixed;
  return p == q ? Polarity::plus : Polarity::minus;
}

// p <= q iff p == q or p is mixed.
[[nodiscard]] constexpr bool polarity_leq(Polarity p, Polarity q) noexcept {
  return p == q || p == Polarity::mixed;
}

[[nodiscard]] constexpr std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::plus: return "+";
    case Polarity::minus: return "-";
    case Polarity::mixed: return "o";
  }
  return "?";
}

}  // namespace fwh
