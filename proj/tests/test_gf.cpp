#include <gtest/gtest.h>

#include <random>

#include "expect_code.hpp"
#include "weightred/gf.hpp"

using namespace weightred;

namespace {

// F_q as pairs (a0, a1) = a0 + a1 w over F_p with w^2 = -c1 w - c0.
struct PairField {
  int p, c0, c1;
  std::pair<int, int> mul(std::pair<int, int> x, std::pair<int, int> y) const {
    const int t = x.second * y.second % p;
    const int r0 = ((x.first * y.first - c0 * t) % p + p * p) % p;
    const int r1 = ((x.first * y.second + x.second * y.first - c1 * t) % p + p * p) % p;
    return {r0, r1};
  }
};

class TowerTest : public ::testing::TestWithParam<int> {};

}  // namespace

TEST(Field, RejectsBadPrimes) {
  EXPECT_ERROR_CODE(FieldTower::build(4), ErrorCode::NotPrime);
  EXPECT_ERROR_CODE(FieldTower::build(9), ErrorCode::NotPrime);
  EXPECT_ERROR_CODE(FieldTower::build(2), ErrorCode::TooSmall);
  EXPECT_ERROR_CODE(FieldTower::build(17), ErrorCode::TooLarge);
  EXPECT_ERROR_CODE(FieldTower::build(5, true), ErrorCode::StrictViolation);
  EXPECT_NO_THROW(FieldTower::build(7, true));
  EXPECT_NO_THROW(FieldTower::build(13));
}

TEST_P(TowerTest, QuadraticTableMatchesPolynomialOracle) {
  const auto F = FieldTower::build(GetParam());
  const int p = F.p();
  const auto [c0, c1] = F.base_poly();
  for (int x = 0; x < p; ++x) EXPECT_NE(((x * x + c1 * x + c0) % p + p) % p, 0) << "base quadratic has a root";
  const PairField oracle{p, c0, c1};
  for (int a = 0; a < F.q(); ++a)
    for (int b = 0; b < F.q(); ++b) {
      const auto want = oracle.mul({a % p, a / p}, {b % p, b / p});
      const Elem got = F.mul(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)});
      EXPECT_EQ(got.code, static_cast<std::uint32_t>(want.first + p * want.second));
    }
}

TEST_P(TowerTest, MultiplicationAgreesWithCoordinateProduct) {
  const auto F = FieldTower::build(GetParam());
  std::mt19937_64 rng(11);
  for (int k = 0; k < 4000; ++k) {
    const Elem x = F.random(Level::Quartic, rng), y = F.random(Level::Quartic, rng);
    EXPECT_EQ(F.mul(x, y), F.mul_slow(x, y));
  }
}

TEST_P(TowerTest, FieldAxiomsOnSamples) {
  const auto F = FieldTower::build(GetParam());
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    const Elem x = F.random(Level::Quartic, rng), y = F.random(Level::Quartic, rng), z = F.random(Level::Quartic, rng);
    EXPECT_EQ(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)));
    EXPECT_EQ(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)));
    EXPECT_EQ(F.add(x, F.neg(x)), F.zero());
    EXPECT_EQ(F.sub(F.add(x, y), y), x);
    if (!x.is_zero()) {
      EXPECT_EQ(F.mul(x, F.inv(x)), F.one());
    }
  }
  EXPECT_ERROR_CODE(F.inv(F.zero()), ErrorCode::ZeroElement);
}

TEST_P(TowerTest, GeneratorOrderByRepeatedMultiplication) {
  const auto F = FieldTower::build(GetParam());
  Elem cur = F.g0();
  std::uint64_t n = 1;
  while (cur != F.one()) {
    cur = F.mul_slow(cur, F.g0());
    ++n;
  }
  EXPECT_EQ(n, F.unit_order());
  // smallest code with full order
  for (std::uint32_t c = 1; c < F.g0().code; ++c)
    if (F.valid(Elem{c})) {
      EXPECT_LT(F.element_order(Elem{c}), F.unit_order());
    }
  EXPECT_EQ(F.element_order(F.g1()), static_cast<std::uint64_t>(F.q() - 1));
  EXPECT_TRUE(F.in_level(F.g1(), Level::Quadratic));
}

TEST_P(TowerTest, DiscreteLogMatchesBabyStepGiantStep) {
  const auto F = FieldTower::build(GetParam());
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Elem x = F.random_nonzero(Level::Quartic, rng);
    EXPECT_EQ(F.dlog(x), F.dlog_bsgs(x));
    EXPECT_EQ(F.exp(F.dlog(x)), x);
  }
  EXPECT_EQ(F.dlog(F.g1()), static_cast<std::uint32_t>(F.q() + 1));
  EXPECT_ERROR_CODE(F.dlog(F.zero()), ErrorCode::ZeroElement);
}

TEST_P(TowerTest, SubfieldsAreFrobeniusFixedPoints) {
  const auto F = FieldTower::build(GetParam());
  const int p = F.p(), q = F.q();
  std::size_t base = 0, quad = 0;
  for (Elem x : F.elements(Level::Quartic)) {
    const bool fixed_p = F.frobenius(x) == x;
    const bool fixed_q = F.pow(x, static_cast<std::uint64_t>(q)) == x;
    EXPECT_EQ(fixed_p, F.level_of(x) == Level::Base);
    EXPECT_EQ(fixed_q, F.level_of(x) <= Level::Quadratic);
    EXPECT_EQ(F.pow(x, static_cast<std::uint64_t>(q) * q), x);
    base += fixed_p;
    quad += fixed_q;
  }
  EXPECT_EQ(base, static_cast<std::size_t>(p));
  EXPECT_EQ(quad, static_cast<std::size_t>(q));
  EXPECT_EQ(F.elements(Level::Quartic).size(), F.order());
}

TEST_P(TowerTest, FrobeniusIsAdditiveAndMultiplicative) {
  const auto F = FieldTower::build(GetParam());
  std::mt19937_64 rng(8);
  for (int k = 0; k < 500; ++k) {
    const Elem x = F.random(Level::Quartic, rng), y = F.random(Level::Quartic, rng);
    EXPECT_EQ(F.frobenius(F.add(x, y)), F.add(F.frobenius(x), F.frobenius(y)));
    EXPECT_EQ(F.frobenius(F.mul(x, y)), F.mul(F.frobenius(x), F.frobenius(y)));
  }
}

TEST_P(TowerTest, SignedPowers) {
  const auto F = FieldTower::build(GetParam());
  const Elem x = F.g0();
  EXPECT_EQ(F.mul(F.pow_signed(x, -5), F.pow(x, 5)), F.one());
  EXPECT_EQ(F.pow_signed(x, 0), F.one());
  EXPECT_EQ(F.make_quadratic(1, 1), F.add(F.one(), F.w()));
}

TEST(Field, BuildIsDeterministic) {
  const auto a = FieldTower::build(7), b = FieldTower::build(7);
  EXPECT_EQ(a.g0(), b.g0());
  EXPECT_EQ(a.base_poly(), b.base_poly());
  EXPECT_EQ(a.quad_poly(), b.quad_poly());
}

INSTANTIATE_TEST_SUITE_P(Primes, TowerTest, ::testing::Values(3, 5, 7, 11, 13));
