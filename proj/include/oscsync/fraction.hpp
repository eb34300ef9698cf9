#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

namespace oscsync {

// Reduced ratio of two positive integers (the subharmonic ratio m1/m2).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return num > 0 && den > 0; }
  bool operator==(const Fraction&) const = default;
  bool operator<(const Fraction& o) const {
    return num * o.den < o.num * den;  // both reduced, components small
  }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Fraction reduce_fraction(std::int64_t m1, std::int64_t m2) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("reduce_fraction: components must be >= 1");
  const std::int64_t g = std::gcd(m1, m2);
  return {m1 / g, m2 / g};
}

inline Fraction multiply(Fraction a, Fraction b) {
  // cross-reduce first so intermediate products stay small
  const std::int64_t g1 = std::gcd(a.num, b.den);
  const std::int64_t g2 = std::gcd(b.num, a.den);
  a.num /= g1;
  b.den /= g1;
  b.num /= g2;
  a.den /= g2;
  if (a.num > INT64_MAX / b.num || a.den > INT64_MAX / b.den)
    throw std::overflow_error("fraction product overflows 64-bit components");
  return {a.num * b.num, a.den * b.den};
}

// Reduced product of a non-empty list of fractions.
inline Fraction product(std::span<const Fraction> fs) {
  if (fs.empty()) throw std::invalid_argument("product: empty fraction list");
  Fraction acc{1, 1};
  for (const Fraction& f : fs) {
    if (!f.defined()) throw std::invalid_argument("product: undefined fraction");
    acc = multiply(acc, reduce_fraction(f.num, f.den));
  }
  return acc;
}

}  // namespace oscsync
