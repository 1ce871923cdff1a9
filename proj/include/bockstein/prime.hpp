#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bockstein {

/// A prime p small enough that every product of two residues mod p^2 fits in 64 bits.
class Prime {
public:
  static constexpr std::uint64_t kLimit = std::uint64_t{1} << 20;

  explicit Prime(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= kLimit)
      throw std::invalid_argument("prime must lie in [2, 2^20), got " + std::to_string(p));
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw std::invalid_argument(std::to_string(p) + " is not prime");
  }

  constexpr std::uint64_t value() const noexcept { return p_; }
  constexpr std::uint64_t square() const noexcept { return p_ * p_; }

  friend constexpr bool operator==(Prime, Prime) = default;

private:
  std::uint64_t p_;
};

/// Arithmetic on canonical representatives in [0, modulus).
namespace modular {

constexpr std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t mod) noexcept {
  const std::uint64_t s = a + b;
  return s >= mod ? s - mod : s;
}

constexpr std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t mod) noexcept {
  return a >= b ? a - b : a + mod - b;
}

constexpr std::uint64_t neg(std::uint64_t a, std::uint64_t mod) noexcept {
  return a == 0 ? 0 : mod - a;
}

constexpr std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t mod) noexcept {
  return (a * b) % mod;
}

constexpr std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1)
      result = mul(result, base, mod);
    base = mul(base, base, mod);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a unit of Z/p^e via Euler: a^(phi(mod) - 1), where phi(p^e) = p^(e-1)(p-1).
constexpr std::uint64_t inverse(std::uint64_t a, std::uint64_t p, std::uint64_t mod) noexcept {
  const std::uint64_t totient = mod / p * (p - 1);
  return pow(a, totient - 1, mod);
}

} // namespace modular
} // namespace bockstein
