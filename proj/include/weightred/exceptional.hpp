#pragma once

// The two weight shapes (r, s) = (1, p-2) and (p-2, 1): the monomial
// submodule M, the fixed class, and the filtration of W^{l,t}_{r,s}.

#include <string>
#include <vector>

#include "weightred/morphisms.hpp"

namespace weightred {

enum class ExceptionalCase { First, Second };  // (1, p-2) and (p-2, 1)

inline std::string_view to_string(ExceptionalCase c) { return c == ExceptionalCase::First ? "1,p-2" : "p-2,1"; }

inline std::pair<int, int> exceptional_shape(int p, ExceptionalCase c) {
  return c == ExceptionalCase::First ? std::pair{1, p - 2} : std::pair{p - 2, 1};
}

/// Twist of the one-dimensional factor: e + p(p-1) or e + p - 1.
inline std::int64_t exceptional_fixed_twist(int p, ExceptionalCase c, std::int64_t e) {
  return c == ExceptionalCase::First ? e + static_cast<std::int64_t>(p) * (p - 1) : e + p - 1;
}

/// Expected factors of W^{l,t}_{r,s}: the line, M/V, and the top quotient.
struct ExceptionalLabels {
  WeightLabel line;
  WeightLabel middle;
  WeightLabel top;
};

inline ExceptionalLabels exceptional_labels(int p, ExceptionalCase c, std::int64_t l, std::int64_t t) {
  const std::int64_t e = l + static_cast<std::int64_t>(p) * t;
  const WeightLabel line = WeightLabel::twist(p, 0, 0, exceptional_fixed_twist(p, c, e));
  if (c == ExceptionalCase::First)
    return {line, WeightLabel::make(p, p - 3, p - 3, 2 + l, t), WeightLabel::make(p, p - 2, 1, 1 + l, p - 2 + t)};
  return {line, WeightLabel::make(p, p - 3, p - 3, l, 2 + t), WeightLabel::make(p, 1, p - 2, p - 2 + l, 1 + t)};
}

struct ExceptionalData {
  ExceptionalCase which = ExceptionalCase::First;
  std::int64_t l = 0, t = 0;
  int r = 0, s = 0;
  ModulePtr ambient;  // U^{l+pt}_{r+ps}
  std::optional<ModMap> psi;
  Subspace psi_image;
  Subspace monomials;  // M
  Vec fixed_class;
  std::int64_t fixed_twist = 0;
  std::vector<std::string> warnings;
};

inline void check_exceptional_prime(const FieldTower& F, bool strict, std::vector<std::string>& warnings) {
  if (F.p() < 5) throw Error(ErrorCode::TooSmall, "exceptional analysis needs p >= 5");
  if (F.p() == 5) {
    if (strict) throw Error(ErrorCode::StrictViolation, "exceptional analysis requires p > 5 in strict mode");
    warnings.push_back("p = 5: the case analysis is only claimed for p > 5");
  }
}

/// Builds M by spinning the degree-(p-1)^2 monomials (or their Frobenius images
/// in the second case) under GL. Throws DimensionMismatch unless dim M = (p-1)^2 + 1.
inline ExceptionalData monomial_submodule(const TowerPtr& tower, std::int64_t l, std::int64_t t,
                                          ExceptionalCase which = ExceptionalCase::First, bool strict = false) {
  const FieldTower& F = *tower;
  ExceptionalData ex;
  check_exceptional_prime(F, strict, ex.warnings);
  const int p = F.p();
  ex.which = which;
  ex.l = l;
  ex.t = t;
  std::tie(ex.r, ex.s) = exceptional_shape(p, which);
  const auto [d, e] = psi_target(F, ex.r, ex.s, l, t);
  ex.ambient = induced_module(tower, d, e);
  ex.psi = psi_embed_into(tower, ex.r, ex.s, l, t, ex.ambient);
  ex.psi_image = ex.psi->image();

  const auto deg = static_cast<std::uint64_t>(p - 1) * static_cast<std::uint64_t>(p - 1);
  const std::uint64_t mult = which == ExceptionalCase::First ? 1 : static_cast<std::uint64_t>(p);
  std::vector<Vec> seeds;
  for (std::uint64_t i = 0; i <= deg; ++i) seeds.push_back(monomial_function(F, mult * i, mult * (deg - i)));
  ex.monomials = spin(*ex.ambient, seeds, group_generators(F, GroupSpec::gl()));
  if (ex.monomials.dim() != deg + 1)
    throw Error(ErrorCode::DimensionMismatch,
                "dim M = " + std::to_string(ex.monomials.dim()) + ", expected " + std::to_string(deg + 1));
  if (!ex.monomials.contains(F, ex.psi_image))
    throw Error(ErrorCode::DimensionMismatch, "M does not contain the image of the embedding");

  const std::uint64_t fixed_exp = which == ExceptionalCase::First ? static_cast<std::uint64_t>(p) * (p - 1) : p - 1;
  ex.fixed_class = monomial_function(F, fixed_exp, fixed_exp);
  ex.fixed_twist = exceptional_fixed_twist(p, which, e);
  return ex;
}

/// True iff g v - det(g)^twist v lies in the image of the embedding for every GL generator.
inline bool fixed_class_check(const ExceptionalData& ex, const Vec& v, std::int64_t twist) {
  const FieldTower& F = ex.ambient->field();
  const auto tw = static_cast<std::uint64_t>(mod_floor(twist, F.q() - 1));
  for (const auto& g : group_generators(F, GroupSpec::gl())) {
    Vec w = apply(F, ex.ambient->action_cached(g), v);
    row_axpy(F, w, v, F.neg(F.pow(det(F, g), tw)));
    if (!ex.psi_image.contains(F, w)) return false;
  }
  return true;
}

inline bool fixed_class_check(const ExceptionalData& ex) { return fixed_class_check(ex, ex.fixed_class, ex.fixed_twist); }

/// The filtration  0 -> line + M/V -> W -> top -> 0  inside W = U / V.
struct ExceptionalFiltration {
  CokernelData w;
  SubmoduleData line;    // class of the fixed vector
  SubmoduleData middle;  // M / V
  SubmoduleData bottom;  // line + M/V
  QuotientData top;      // W / bottom
  ModMap inclusion;
  ModMap projection;
  ExactnessReport exactness;
  bool direct = false;  // line and M/V meet in zero
};

inline ExceptionalFiltration exceptional_filtration(const ExceptionalData& ex) {
  const FieldTower& F = ex.ambient->field();
  CokernelData w = cokernel(*ex.psi);
  const ModulePtr& wm = w.quotient.module;
  auto project_all = [&](const Subspace& s) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(w.quotient.project(F, s.basis().row(i)));
    return Subspace::span(F, wm->dim(), rows);
  };
  const Subspace line_space = Subspace::span(F, wm->dim(), {w.quotient.project(F, ex.fixed_class)});
  const Subspace middle_space = project_all(ex.monomials);
  const Subspace bottom_space = sum(F, line_space, middle_space);
  SubmoduleData line = submodule(wm, line_space);
  SubmoduleData middle = submodule(wm, middle_space);
  SubmoduleData bottom = submodule(wm, bottom_space);
  QuotientData top = quotient(wm, bottom_space);
  ModMap inc = ModMap::make(bottom.module, wm, bottom.inclusion);
  ModMap proj = ModMap::make(wm, top.module, top.projection);
  ExactnessReport exact = exact_sequence_check({inc, proj});
  const bool direct = bottom_space.dim() == line_space.dim() + middle_space.dim();
  return {std::move(w), std::move(line), std::move(middle), std::move(bottom), std::move(top),
          std::move(inc), std::move(proj), std::move(exact), direct};
}

}  // namespace weightred
