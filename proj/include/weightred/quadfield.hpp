#pragma once

// Imaginary quadratic fields Q(sqrt D): class numbers by reduced forms, unit
// orders, splitting of rational primes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "weightred/error.hpp"
#include "weightred/gf.hpp"

namespace weightred {

struct ReducedForm {
  std::int64_t a = 0, b = 0, c = 0;

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
  friend auto operator<=>(const ReducedForm&, const ReducedForm&) = default;
};

inline bool is_squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

inline void check_discriminant(std::int64_t D) {
  if (D >= 0) throw Error(ErrorCode::NonNegative, "discriminant must be negative");
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw Error(ErrorCode::BadResidue, "discriminant must be 0 or 1 mod 4");
  bool fundamental = false;
  if (r == 1) {
    fundamental = is_squarefree(D);
  } else {
    const std::int64_t m = D / 4;
    const std::int64_t mr = ((m % 4) + 4) % 4;
    fundamental = (mr == 2 || mr == 3) && is_squarefree(m);
  }
  if (!fundamental) throw Error(ErrorCode::NotFundamental, "discriminant " + std::to_string(D) + " is not fundamental");
}

/// Primitive reduced forms: |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline std::vector<ReducedForm> reduced_forms(std::int64_t D) {
  check_discriminant(D);
  std::vector<ReducedForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a)
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline int unit_order(std::int64_t D) {
  if (D == -3) return 6;
  if (D == -4) return 4;
  return 2;
}

struct ImagQuadField {
  std::int64_t D = 0;
  std::size_t h = 0;
  int f = 0;
};

inline ImagQuadField make_field(std::int64_t D) {
  const auto forms = reduced_forms(D);
  return {D, forms.size(), unit_order(D)};
}

enum class Splitting { Split, Inert, Ramified };

inline std::string_view to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  base = ((base % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

/// Kronecker symbol (D | l) for a prime l: Euler's criterion, and the mod-8 rule at 2.
inline int kronecker(std::int64_t D, std::int64_t l) {
  if (!is_prime(l)) throw Error(ErrorCode::NotPrime, std::to_string(l) + " is not prime");
  if (D % l == 0) return 0;
  if (l == 2) {
    const std::int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return pow_mod(D, (l - 1) / 2, l) == 1 ? 1 : -1;
}

inline Splitting splitting(const ImagQuadField& K, std::int64_t l) {
  switch (kronecker(K.D, l)) {
    case 1: return Splitting::Split;
    case -1: return Splitting::Inert;
    default: return Splitting::Ramified;
  }
}

inline bool is_inert(const ImagQuadField& K, std::int64_t l) {
  const Splitting s = splitting(K, l);
  if (s == Splitting::Ramified) throw Error(ErrorCode::Ramified, std::to_string(l) + " ramifies");
  return s == Splitting::Inert;
}

/// N + 1 with N = l^2 for inert l and N = l for split l.
inline std::int64_t eisenstein_eigenvalue(const ImagQuadField& K, std::int64_t l) {
  return is_inert(K, l) ? l * l + 1 : l + 1;
}

/// Warning text when a rational level bound violates the hypothesis that the
/// positive generator of the level exceeds 3.
inline std::optional<std::string> level_warning(std::int64_t level_generator) {
  if (level_generator > 3) return std::nullopt;
  return "level generator " + std::to_string(level_generator) + " is not greater than 3";
}

/// Unit order divides q - 1 for an inert p paired with the field.
inline bool unit_order_compatible(const ImagQuadField& K, int p) {
  return (static_cast<std::int64_t>(p) * p - 1) % K.f == 0;
}

}  // namespace weightred
