#include <gtest/gtest.h>

#include "expect_code.hpp"
#include "weightred/brauer.hpp"
#include "weightred/exceptional.hpp"
#include "weightred/meataxe.hpp"

using namespace weightred;

namespace {

bool matches(const GModule& m, const WeightLabel& w, const std::vector<ClassRep>& classes) {
  if (m.dim() != static_cast<std::size_t>(w.dim())) return false;
  for (const auto& c : classes)
    if (!character_matches(m, c, weight_character(m.field(), w, c))) return false;
  return true;
}

struct Case {
  int p;
  ExceptionalCase which;
  int l, t;
};

class ExceptionalTest : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST_P(ExceptionalTest, DimensionsFiltrationAndFactors) {
  const auto [p, which, l, t] = GetParam();
  const auto T = make_tower(p);
  const ExceptionalData ex = monomial_submodule(T, l, t, which, p > 5);
  EXPECT_EQ(ex.monomials.dim(), static_cast<std::size_t>((p - 1) * (p - 1) + 1));
  const auto [r, s] = exceptional_shape(p, which);
  EXPECT_EQ(ex.psi_image.dim(), static_cast<std::size_t>((r + 1) * (s + 1)));
  EXPECT_TRUE(ex.monomials.contains(*T, ex.psi_image));
  EXPECT_TRUE(fixed_class_check(ex));

  const ExceptionalFiltration fil = exceptional_filtration(ex);
  EXPECT_TRUE(fil.exactness.ok());
  EXPECT_TRUE(fil.direct);
  EXPECT_EQ(fil.line.space.dim(), 1u);
  EXPECT_EQ(fil.middle.space.dim(), static_cast<std::size_t>((p - 2) * (p - 2)));
  EXPECT_EQ(fil.w.quotient.module->dim(), static_cast<std::size_t>(p * p + 1) - ex.psi_image.dim());

  const ExceptionalLabels labels = exceptional_labels(p, which, l, t);
  const auto classes = p_regular_classes(*T);
  EXPECT_TRUE(matches(*fil.line.module, labels.line, classes));
  EXPECT_TRUE(matches(*fil.middle.module, labels.middle, classes));
  EXPECT_TRUE(matches(*fil.top.module, labels.top, classes));
  EXPECT_EQ(labels.line.dim() + labels.middle.dim() + labels.top.dim(),
            static_cast<int>(fil.w.quotient.module->dim()));
}

TEST_P(ExceptionalTest, LiteralTwistReadingFails) {
  const auto [p, which, l, t] = GetParam();
  const auto T = make_tower(p);
  const ExceptionalData ex = monomial_submodule(T, l, t, which, false);
  EXPECT_FALSE(fixed_class_check(ex, ex.fixed_class, l + static_cast<std::int64_t>(p) * t));
  // a monomial of M other than the fixed class is not fixed modulo the image
  EXPECT_FALSE(fixed_class_check(ex, monomial_function(*T, 3, static_cast<std::uint64_t>((p - 1) * (p - 1) - 3)),
                                 ex.fixed_twist));
}

INSTANTIATE_TEST_SUITE_P(Cases, ExceptionalTest,
                         ::testing::Values(Case{5, ExceptionalCase::First, 0, 0}, Case{5, ExceptionalCase::Second, 0, 0},
                                           Case{7, ExceptionalCase::First, 0, 0}, Case{7, ExceptionalCase::Second, 0, 0},
                                           Case{7, ExceptionalCase::First, 2, 3}, Case{7, ExceptionalCase::Second, 6, 1}));

TEST(Exceptional, PrimeGates) {
  EXPECT_ERROR_CODE(monomial_submodule(make_tower(3), 0, 0), ErrorCode::TooSmall);
  EXPECT_ERROR_CODE(monomial_submodule(make_tower(5), 0, 0, ExceptionalCase::First, true), ErrorCode::StrictViolation);
  const ExceptionalData ex = monomial_submodule(make_tower(5), 0, 0);
  ASSERT_EQ(ex.warnings.size(), 1u);
  EXPECT_TRUE(monomial_submodule(make_tower(7), 0, 0, ExceptionalCase::First, true).warnings.empty());
}

TEST(Exceptional, LabelsAndTwists) {
  const int p = 7;
  EXPECT_EQ(exceptional_shape(p, ExceptionalCase::First), (std::pair{1, 5}));
  EXPECT_EQ(exceptional_shape(p, ExceptionalCase::Second), (std::pair{5, 1}));
  EXPECT_EQ(exceptional_fixed_twist(p, ExceptionalCase::First, 0), 42);
  EXPECT_EQ(exceptional_fixed_twist(p, ExceptionalCase::Second, 0), 6);
  const ExceptionalLabels a = exceptional_labels(p, ExceptionalCase::First, 0, 0);
  EXPECT_EQ(a.middle, WeightLabel::make(p, 4, 4, 2, 0));
  EXPECT_EQ(a.middle.to_string(p), "V^{2,0}_{4,4}");
}
