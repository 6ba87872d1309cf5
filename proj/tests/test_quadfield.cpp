#include <gtest/gtest.h>

#include "expect_code.hpp"
#include "quad_oracle.hpp"

using namespace weightred;
using namespace oracle;

TEST(QuadField, ClassNumbersAgreeWithAnalyticFormula) {
  int checked = 0;
  for (std::int64_t D = -3; D >= -400; --D) {
    if (!fundamental(D)) {
      EXPECT_ANY_THROW(reduced_forms(D)) << D;
      continue;
    }
    EXPECT_EQ(static_cast<std::int64_t>(make_field(D).h), dirichlet_class_number(D)) << D;
    ++checked;
  }
  EXPECT_EQ(checked, 122);
}

TEST(QuadField, FormsAgreeWithBoxReduction) {
  for (std::int64_t D : {-3, -4, -7, -8, -15, -20, -23, -47, -56, -84, -163}) {
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> got;
    for (const auto& f : reduced_forms(D)) {
      EXPECT_EQ(f.b * f.b - 4 * f.a * f.c, D);
      got.insert({f.a, f.b, f.c});
    }
    EXPECT_EQ(got, classes_by_reduction(D)) << D;
  }
}

TEST(QuadField, DocumentedValues) {
  EXPECT_EQ(make_field(-3).h, 1u);
  EXPECT_EQ(make_field(-4).h, 1u);
  EXPECT_EQ(make_field(-7).h, 1u);
  EXPECT_EQ(make_field(-8).h, 1u);
  EXPECT_EQ(make_field(-47).h, 5u);
  EXPECT_EQ(reduced_forms(-23), (std::vector<ReducedForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}}));
  EXPECT_EQ(reduced_forms(-163), (std::vector<ReducedForm>{{1, 1, 41}}));
  EXPECT_EQ(reduced_forms(-4), (std::vector<ReducedForm>{{1, 0, 1}}));
  EXPECT_EQ(make_field(-3).f, 6);
  EXPECT_EQ(make_field(-4).f, 4);
  EXPECT_EQ(make_field(-7).f, 2);
  EXPECT_EQ(make_field(-23).f, 2);
}

TEST(QuadField, SplittingAgreesWithRootCount) {
  for (std::int64_t D : {-3, -4, -7, -8, -23, -163})
    for (std::int64_t l : {2, 3, 5, 7, 11, 13}) {
      const ImagQuadField K = make_field(D);
      const int n = roots_mod(D, l);
      const Splitting want = n == 0 ? Splitting::Inert : n == 1 ? Splitting::Ramified : Splitting::Split;
      EXPECT_EQ(splitting(K, l), want) << D << " " << l;
      if (want == Splitting::Ramified) {
        EXPECT_ERROR_CODE(is_inert(K, l), ErrorCode::Ramified);
        continue;
      }
      EXPECT_EQ(is_inert(K, l), want == Splitting::Inert);
      EXPECT_EQ(eisenstein_eigenvalue(K, l), want == Splitting::Inert ? l * l + 1 : l + 1);
    }
  EXPECT_TRUE(is_inert(make_field(-3), 2));
  EXPECT_EQ(eisenstein_eigenvalue(make_field(-3), 2), 5);
  EXPECT_EQ(eisenstein_eigenvalue(make_field(-4), 7), 50);
}

TEST(QuadField, Errors) {
  EXPECT_ERROR_CODE(make_field(5), ErrorCode::NonNegative);
  EXPECT_ERROR_CODE(make_field(0), ErrorCode::NonNegative);
  EXPECT_ERROR_CODE(make_field(-5), ErrorCode::BadResidue);
  EXPECT_ERROR_CODE(make_field(-6), ErrorCode::BadResidue);
  EXPECT_ERROR_CODE(make_field(-12), ErrorCode::NotFundamental);
  EXPECT_ERROR_CODE(make_field(-16), ErrorCode::NotFundamental);
  EXPECT_ERROR_CODE(kronecker(-3, 9), ErrorCode::NotPrime);
  EXPECT_ERROR_CODE(kronecker(-3, 1), ErrorCode::NotPrime);
}

TEST(QuadField, LevelAndUnitOrder) {
  EXPECT_TRUE(level_warning(2).has_value());
  EXPECT_TRUE(level_warning(3).has_value());
  EXPECT_FALSE(level_warning(4).has_value());
  EXPECT_TRUE(unit_order_compatible(make_field(-3), 5));
  EXPECT_TRUE(unit_order_compatible(make_field(-4), 7));
  EXPECT_TRUE(unit_order_compatible(make_field(-23), 3));
}
