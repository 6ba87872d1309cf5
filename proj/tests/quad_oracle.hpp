#pragma once

// Independent oracles for imaginary quadratic arithmetic.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <tuple>

#include "weightred/quadfield.hpp"

namespace oracle {

using weightred::ReducedForm;
using weightred::is_squarefree;

inline bool fundamental(std::int64_t D) {
  if (D % 4 == -3 || D % 4 == 1) return is_squarefree(D);
  if (D % 4 != 0) return false;
  const std::int64_t m = D / 4;
  return (m % 4 == -1 || m % 4 == 3 || m % 4 == -2 || m % 4 == 2) && is_squarefree(m);
}

/// Jacobi symbol (a/n) for odd positive n.
inline int jacobi(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  int s = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

/// Kronecker symbol (D/n) for a discriminant D and n >= 1.
inline int kronecker_symbol(std::int64_t D, std::int64_t n) {
  int s = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t r = ((D % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) s = -s;
  }
  return s * jacobi(D, n);
}

/// Analytic class number: h = -(w / 2|D|) * sum_{a < |D|} chi(a) a.
inline std::int64_t dirichlet_class_number(std::int64_t D) {
  std::int64_t sum = 0;
  for (std::int64_t a = 1; a < -D; ++a) sum += kronecker_symbol(D, a) * a;
  const std::int64_t w = D == -3 ? 6 : D == -4 ? 4 : 2;
  return -w * sum / (2 * -D);
}

/// Reduces a positive definite form by the classical swap-and-translate algorithm.
inline ReducedForm reduce(ReducedForm f) {
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      const std::int64_t k = static_cast<std::int64_t>(std::floor(static_cast<double>(f.a - f.b) / (2.0 * f.a)));
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = f.b + 2 * f.a * k;
    } else if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
    } else {
      if (f.a == f.c && f.b < 0) f.b = -f.b;
      return f;
    }
  }
}

/// Classes of primitive forms of discriminant D, found by reducing every form in a box.
inline std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> classes_by_reduction(std::int64_t D) {
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
  const std::int64_t B = 3 * -D;
  for (std::int64_t a = 1; a <= B; ++a)
    for (std::int64_t b = -B; b <= B; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      const ReducedForm r = reduce({a, b, c});
      out.insert({r.a, r.b, r.c});
    }
  return out;
}

/// Number of roots of the minimal polynomial of the ring of integers modulo a prime.
inline int roots_mod(std::int64_t D, std::int64_t l) {
  int n = 0;
  for (std::int64_t x = 0; x < l; ++x) {
    const std::int64_t v = D % 4 == 0 ? x * x - D / 4 : x * x - x + (1 - D) / 4;
    if (((v % l) + l) % l == 0) ++n;
  }
  return n;
}

}  // namespace oracle
