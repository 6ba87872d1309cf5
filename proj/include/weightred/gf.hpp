#pragma once

// Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^2}, q = p^2.
//
// Elements of every level share one integer encoding so that the embeddings
// F_p -> F_q -> F_{q^2} are the identity on codes:
//   F_p      : a                        0 <= a < p
//   F_q      : a0 + p*a1                coordinates over F_p in the basis (1, w)
//   F_{q^2}  : c0 | (c1 << shift)       coordinates over F_q in the basis (1, theta)
// Multiplication goes through discrete log tables built from a fixed
// generator g0 of F_{q^2}^*.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "weightred/error.hpp"

namespace weightred {

enum class Level : std::uint8_t { Base = 0, Quadratic = 1, Quartic = 2 };

constexpr std::string_view to_string(Level l) {
  switch (l) {
    case Level::Base: return "base";
    case Level::Quadratic: return "quadratic";
    case Level::Quartic: return "quartic";
  }
  return "?";
}

struct Elem {
  std::uint32_t code = 0;

  constexpr bool is_zero() const noexcept { return code == 0; }
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// Coordinates of an element over the level immediately below it.
struct Coordinates {
  Level level;
  std::array<Elem, 2> coords;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

class FieldTower {
 public:
  static constexpr int kMaxPrime = 13;
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  /// Deterministic construction: both defining quadratics are the first
  /// irreducible monic x^2 + c1 x + c0 in the order (c0, c1) by code, and g0 is
  /// the smallest code of multiplicative order q^2 - 1.
  static FieldTower build(int p, bool strict = false) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p));
    if (p < 3) throw Error(ErrorCode::TooSmall, "p must be at least 3");
    if (p > kMaxPrime)
      throw Error(ErrorCode::TooLarge, "p > " + std::to_string(kMaxPrime) + " is not supported");
    if (strict && p <= 5) throw Error(ErrorCode::StrictViolation, "strict mode requires p > 5");
    return FieldTower(p);
  }

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  /// |F_{q^2}|
  std::uint32_t order() const noexcept { return big_; }
  /// |F_{q^2}^*| = q^2 - 1
  std::uint32_t unit_order() const noexcept { return big_ - 1; }
  int shift() const noexcept { return shift_; }

  Elem zero() const noexcept { return {0}; }
  Elem one() const noexcept { return {1}; }
  Elem g0() const noexcept { return g0_; }
  Elem g1() const noexcept { return exp_[q_ + 1]; }
  /// The F_p-basis element w of F_q (root of the base quadratic).
  Elem w() const noexcept { return {static_cast<std::uint32_t>(p_)}; }
  /// The F_q-basis element theta of F_{q^2}.
  Elem theta() const noexcept { return {1u << shift_}; }

  std::array<int, 2> base_poly() const noexcept { return base_poly_; }
  std::array<Elem, 2> quad_poly() const noexcept { return quad_poly_; }

  Elem from_int(std::int64_t a) const noexcept {
    std::int64_t r = a % p_;
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }
  Elem make_quadratic(int a0, int a1) const noexcept {
    return {from_int(a0).code + static_cast<std::uint32_t>(p_) * from_int(a1).code};
  }
  Elem make_quartic(Elem c0, Elem c1) const {
    if (c0.code >= static_cast<std::uint32_t>(q_) || c1.code >= static_cast<std::uint32_t>(q_))
      throw Error(ErrorCode::LevelMismatch, "quartic coordinates must lie in F_q");
    return {c0.code | (c1.code << shift_)};
  }

  bool valid(Elem x) const noexcept {
    return (x.code & mask_) < static_cast<std::uint32_t>(q_) &&
           (x.code >> shift_) < static_cast<std::uint32_t>(q_);
  }

  Level level_of(Elem x) const noexcept {
    if ((x.code >> shift_) != 0) return Level::Quartic;
    if (x.code >= static_cast<std::uint32_t>(p_)) return Level::Quadratic;
    return Level::Base;
  }
  bool in_level(Elem x, Level l) const noexcept { return level_of(x) <= l; }

  Coordinates coordinates(Elem x) const noexcept {
    switch (level_of(x)) {
      case Level::Quartic: return {Level::Quartic, {Elem{x.code & mask_}, Elem{x.code >> shift_}}};
      case Level::Quadratic:
        return {Level::Quadratic,
                {Elem{x.code % static_cast<std::uint32_t>(p_)}, Elem{x.code / static_cast<std::uint32_t>(p_)}}};
      case Level::Base: break;
    }
    return {Level::Base, {x, Elem{0}}};
  }

  Elem add(Elem x, Elem y) const noexcept {
    const std::uint32_t lo = addq_[((x.code & mask_) << shift_) | (y.code & mask_)];
    const std::uint32_t hi = addq_[((x.code >> shift_) << shift_) | (y.code >> shift_)];
    return {lo | (hi << shift_)};
  }
  Elem neg(Elem x) const noexcept {
    return {static_cast<std::uint32_t>(negq_[x.code & mask_]) |
            (static_cast<std::uint32_t>(negq_[x.code >> shift_]) << shift_)};
  }
  Elem sub(Elem x, Elem y) const noexcept { return add(x, neg(y)); }
  Elem mul(Elem x, Elem y) const noexcept {
    if (x.code == 0 || y.code == 0) return {0};
    return exp_[log_[x.code] + log_[y.code]];
  }
  /// x + a*y, the inner step of every elimination loop.
  Elem axpy(Elem x, Elem a, Elem y) const noexcept { return add(x, mul(a, y)); }
  Elem inv(Elem x) const {
    if (x.code == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    const std::uint32_t l = log_[x.code];
    return exp_[l == 0 ? 0 : unit_order() - l];
  }
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }

  /// Repeated squaring; pow(0, 0) = 1.
  Elem pow(Elem x, std::uint64_t n) const noexcept {
    Elem result = one();
    Elem base = x;
    while (n > 0) {
      if (n & 1u) result = mul(result, base);
      base = mul(base, base);
      n >>= 1u;
    }
    return result;
  }
  Elem pow_signed(Elem x, std::int64_t n) const {
    if (n >= 0) return pow(x, static_cast<std::uint64_t>(n));
    return pow(inv(x), static_cast<std::uint64_t>(-n));
  }

  /// x -> x^p. Order 2 on F_q and order 4 on F_{q^2}.
  Elem frobenius(Elem x) const noexcept { return pow(x, static_cast<std::uint64_t>(p_)); }

  /// g0^dlog(x) = x.
  std::uint32_t dlog(Elem x) const {
    if (x.code == 0) throw Error(ErrorCode::ZeroElement, "dlog of zero");
    if (!valid(x)) throw Error(ErrorCode::LevelMismatch, "invalid element code");
    return log_[x.code];
  }

  /// Baby-step/giant-step discrete log; independent of the log table.
  std::uint32_t dlog_bsgs(Elem x) const {
    if (x.code == 0) throw Error(ErrorCode::ZeroElement, "dlog of zero");
    const std::uint32_t n = unit_order();
    const auto m = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::unordered_map<std::uint32_t, std::uint32_t> baby;
    Elem cur = one();
    for (std::uint32_t j = 0; j < m; ++j) {
      baby.emplace(cur.code, j);
      cur = mul_slow(cur, g0_);
    }
    // factor = g0^{-m}
    Elem factor = pow_slow(g0_, static_cast<std::uint64_t>(n) - (m % n));
    Elem gamma = x;
    for (std::uint32_t i = 0; i <= m; ++i) {
      if (auto it = baby.find(gamma.code); it != baby.end())
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(i) * m + it->second) % n);
      gamma = mul_slow(gamma, factor);
    }
    throw Error(ErrorCode::InternalMismatch, "bsgs failed");
  }

  /// g0^k
  Elem exp(std::uint64_t k) const noexcept { return exp_[k % unit_order()]; }

  std::vector<Elem> elements(Level l) const {
    std::vector<Elem> out;
    switch (l) {
      case Level::Base:
        for (int a = 0; a < p_; ++a) out.push_back({static_cast<std::uint32_t>(a)});
        break;
      case Level::Quadratic:
        for (int a = 0; a < q_; ++a) out.push_back({static_cast<std::uint32_t>(a)});
        break;
      case Level::Quartic:
        for (int c1 = 0; c1 < q_; ++c1)
          for (int c0 = 0; c0 < q_; ++c0)
            out.push_back({static_cast<std::uint32_t>(c0) | (static_cast<std::uint32_t>(c1) << shift_)});
        break;
    }
    return out;
  }

  template <class Rng>
  Elem random(Level l, Rng& rng) const {
    switch (l) {
      case Level::Base: return {static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, p_ - 1)(rng))};
      case Level::Quadratic:
        return {static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, q_ - 1)(rng))};
      case Level::Quartic: {
        std::uniform_int_distribution<int> d(0, q_ - 1);
        const auto c0 = static_cast<std::uint32_t>(d(rng));
        const auto c1 = static_cast<std::uint32_t>(d(rng));
        return {c0 | (c1 << shift_)};
      }
    }
    return {0};
  }
  template <class Rng>
  Elem random_nonzero(Level l, Rng& rng) const {
    Elem x;
    do x = random(l, rng);
    while (x.is_zero());
    return x;
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elem x) const {
    const std::uint32_t n = unit_order();
    const std::uint32_t k = dlog(x);
    return n / std::gcd(n, k == 0 ? n : k);
  }

  /// Coordinate-level multiplication, used to build the tables and as an
  /// independent check on them.
  Elem mul_slow(Elem x, Elem y) const noexcept {
    const std::uint32_t a0 = x.code & mask_, a1 = x.code >> shift_;
    const std::uint32_t b0 = y.code & mask_, b1 = y.code >> shift_;
    // theta^2 = -c1*theta - c0
    const std::uint32_t t = mulq(a1, b1);
    const std::uint32_t r0 = subq(mulq(a0, b0), mulq(quad_poly_[0].code, t));
    const std::uint32_t r1 = subq(addq(mulq(a0, b1), mulq(a1, b0)), mulq(quad_poly_[1].code, t));
    return {r0 | (r1 << shift_)};
  }
  Elem pow_slow(Elem x, std::uint64_t n) const noexcept {
    Elem result = one();
    Elem base = x;
    while (n > 0) {
      if (n & 1u) result = mul_slow(result, base);
      base = mul_slow(base, base);
      n >>= 1u;
    }
    return result;
  }

 private:
  explicit FieldTower(int p) : p_(p), q_(p * p) {
    shift_ = static_cast<int>(std::bit_width(static_cast<unsigned>(q_ - 1)));
    mask_ = (1u << shift_) - 1u;
    big_ = static_cast<std::uint32_t>(q_) * static_cast<std::uint32_t>(q_);
    build_base();
    build_quadratic_tables();
    build_quartic();
    build_logs();
  }

  std::uint32_t addq(std::uint32_t a, std::uint32_t b) const noexcept { return addq_[(a << shift_) | b]; }
  std::uint32_t subq(std::uint32_t a, std::uint32_t b) const noexcept { return addq(a, negq_[b]); }
  std::uint32_t mulq(std::uint32_t a, std::uint32_t b) const noexcept {
    return mulq_[static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b];
  }

  void build_base() {
    // x^2 + b1 x + b0 over F_p, first irreducible in (b0, b1) order.
    for (int b0 = 0; b0 < p_; ++b0) {
      for (int b1 = 0; b1 < p_; ++b1) {
        bool has_root = false;
        for (int x = 0; x < p_ && !has_root; ++x) has_root = ((x * x + b1 * x + b0) % p_) == 0;
        if (!has_root) {
          base_poly_ = {b0, b1};
          return;
        }
      }
    }
    throw Error(ErrorCode::InternalMismatch, "no irreducible quadratic over F_p");
  }

  void build_quadratic_tables() {
    const std::size_t stride = std::size_t{1} << shift_;
    addq_.assign(stride * stride, 0);
    negq_.assign(stride, 0);
    mulq_.assign(static_cast<std::size_t>(q_) * q_, 0);
    auto split = [this](int a) { return std::array<int, 2>{a % p_, a / p_}; };
    auto join = [this](int a0, int a1) { return ((a0 % p_ + p_) % p_) + p_ * ((a1 % p_ + p_) % p_); };
    for (int a = 0; a < q_; ++a) {
      const auto [a0, a1] = split(a);
      negq_[a] = static_cast<std::uint16_t>(join(-a0, -a1));
      for (int b = 0; b < q_; ++b) {
        const auto [b0, b1] = split(b);
        addq_[(static_cast<std::size_t>(a) << shift_) | b] = static_cast<std::uint16_t>(join(a0 + b0, a1 + b1));
        // w^2 = -b1 w - b0
        const int t = a1 * b1;
        const int r0 = a0 * b0 - base_poly_[0] * t;
        const int r1 = a0 * b1 + a1 * b0 - base_poly_[1] * t;
        mulq_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(join(r0, r1));
      }
    }
  }

  void build_quartic() {
    for (int c0 = 0; c0 < q_; ++c0) {
      for (int c1 = 0; c1 < q_; ++c1) {
        bool has_root = false;
        for (int x = 0; x < q_ && !has_root; ++x) {
          const auto ux = static_cast<std::uint32_t>(x);
          const std::uint32_t v =
              addq(addq(mulq(ux, ux), mulq(static_cast<std::uint32_t>(c1), ux)), static_cast<std::uint32_t>(c0));
          has_root = v == 0;
        }
        if (!has_root) {
          quad_poly_ = {Elem{static_cast<std::uint32_t>(c0)}, Elem{static_cast<std::uint32_t>(c1)}};
          return;
        }
      }
    }
    throw Error(ErrorCode::InternalMismatch, "no irreducible quadratic over F_q");
  }

  void build_logs() {
    const std::uint32_t n = unit_order();
    const auto factors = prime_factors(n);
    bool found = false;
    for (Elem x : elements(Level::Quartic)) {
      if (x.is_zero()) continue;
      bool primitive = true;
      for (auto f : factors)
        if (pow_slow(x, n / f) == one()) {
          primitive = false;
          break;
        }
      if (primitive) {
        g0_ = x;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorCode::InternalMismatch, "no generator found");
    log_.assign(std::size_t{1} << (2 * shift_), kNoLog);
    exp_.assign(2 * static_cast<std::size_t>(n), Elem{0});
    Elem cur = one();
    for (std::uint32_t k = 0; k < n; ++k) {
      exp_[k] = cur;
      exp_[k + n] = cur;
      log_[cur.code] = k;
      cur = mul_slow(cur, g0_);
    }
  }

  int p_;
  int q_;
  int shift_ = 0;
  std::uint32_t mask_ = 0;
  std::uint32_t big_ = 0;
  std::array<int, 2> base_poly_{};
  std::array<Elem, 2> quad_poly_{};
  Elem g0_{};
  std::vector<std::uint16_t> addq_;
  std::vector<std::uint16_t> negq_;
  std::vector<std::uint16_t> mulq_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

}  // namespace weightred
