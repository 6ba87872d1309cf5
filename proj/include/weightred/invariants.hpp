#pragma once

// Fixed spaces under the images of the congruence subgroups: SL_2(F_q), and
// T1(f) = SL_2(F_q) extended by diag(eps, 1) with eps of order f.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weightred/brauer.hpp"
#include "weightred/morphisms.hpp"
#include "weightred/parallel.hpp"

namespace weightred {

inline Subspace fixed_space(const GModule& m, std::span<const GrpElem> gens) {
  const FieldTower& F = m.field();
  const std::size_t n = m.dim();
  if (n == 0) return Subspace(0);
  Mat eqs(0, n, m.level());
  for (const auto& g : gens) {
    const Mat a = shift_diagonal(F, m.action_cached(g), F.one());
    for (std::size_t i = 0; i < n; ++i) eqs.append_row(a.row(i));
  }
  eqs.set_level(max_level(m.level(), entry_level(F, eqs.data())));
  return kernel_basis(F, eqs);
}

inline Subspace fixed_space(const GModule& m, const GroupSpec& group) {
  return fixed_space(m, group_generators(m.field(), group));
}

enum class Lemma { Lem2, Lem3, Lem36, Lem237 };

inline std::string_view to_string(Lemma l) {
  switch (l) {
    case Lemma::Lem2: return "lem2";
    case Lemma::Lem3: return "lem3";
    case Lemma::Lem36: return "lem3.6";
    case Lemma::Lem237: return "lem2_3_7";
  }
  return "?";
}

inline Lemma parse_lemma(std::string_view s) {
  if (s == "lem2") return Lemma::Lem2;
  if (s == "lem3") return Lemma::Lem3;
  if (s == "lem3.6") return Lemma::Lem36;
  if (s == "lem2_3_7") return Lemma::Lem237;
  throw Error(ErrorCode::UnknownLemma, std::string(s));
}

/// The module whose fixed space a lemma item describes.
enum class H0Module { U, V, W, Wss };

inline std::string_view to_string(H0Module m) {
  switch (m) {
    case H0Module::U: return "U";
    case H0Module::V: return "V";
    case H0Module::W: return "W";
    case H0Module::Wss: return "Wss";
  }
  return "?";
}

/// One test point. For U the degree is d and the twist n = e; for V and W the
/// weight is (r, s) with twist e = l + pt.
struct H0Point {
  Lemma lemma = Lemma::Lem2;
  int item = 1;
  H0Module module = H0Module::U;
  bool t1 = false;  // SL when false
  int r = 0, s = 0;
  std::int64_t d = 0;
  std::int64_t e = 0;
  int f = 2;
  bool operator==(const H0Point&) const = default;
};

inline bool divides(std::int64_t f, std::int64_t n) { return mod_floor(n, f) == 0; }

/// Closed-form fixed dimension, or nullopt where the item's hypotheses exclude the point.
inline std::optional<int> expected_h0(int p, const H0Point& pt) {
  const std::int64_t qm1 = static_cast<std::int64_t>(p) * p - 1;
  const std::int64_t e1 = pt.e + static_cast<std::int64_t>(p) * (p - 1), e2 = pt.e + p - 1;
  const bool top = pt.r == p - 1 && pt.s == p - 1;
  const bool first = pt.r == 1 && pt.s == p - 2;
  const bool second = pt.r == p - 2 && pt.s == 1;
  const bool fe = divides(pt.f, pt.e);
  switch (pt.lemma) {
    case Lemma::Lem2:
      return (divides(qm1, pt.d) && (!pt.t1 || divides(pt.f, pt.e))) ? 1 : 0;
    case Lemma::Lem3:
      return (pt.r == 0 && pt.s == 0 && (!pt.t1 || fe)) ? 1 : 0;
    case Lemma::Lem36:
      switch (pt.item) {
        case 1: return (top || first || second) ? 1 : 0;
        case 2:
          if (first || second) return std::nullopt;
          return top ? 1 : 0;
        case 3: return ((top && fe) || (first && divides(pt.f, e1)) || (second && divides(pt.f, e2))) ? 1 : 0;
        case 4:
          if ((first && divides(pt.f, e1)) || (second && divides(pt.f, e2))) return std::nullopt;
          return (top && fe) ? 1 : 0;
        default: break;
      }
      break;
    case Lemma::Lem237:
      if (p <= 5) return std::nullopt;
      if (!first && !second) return std::nullopt;
      if (pt.item == 1) return 1;
      if (pt.item == 2) return (first ? divides(pt.f, e1) : divides(pt.f, e2)) ? 1 : 0;
      break;
  }
  throw Error(ErrorCode::UnknownLemma, std::string(to_string(pt.lemma)) + " item " + std::to_string(pt.item));
}

struct H0Report {
  H0Point point;
  std::string descriptor;
  std::string group;
  std::size_t computed = 0;
  std::optional<int> expected;
  std::string citation;
  std::size_t class_number = 1;
  std::size_t total() const { return class_number * computed; }
  bool skipped() const { return !expected.has_value(); }
  bool match() const { return expected && static_cast<std::size_t>(*expected) == computed; }
};

/// The module for a point: U^e_d, V^{l,t}_{r,s}, W = U/V, or the direct sum of the W factors.
inline ModulePtr h0_module(const TowerPtr& tower, const H0Point& pt) {
  const FieldTower& F = *tower;
  const int p = F.p();
  const std::int64_t l = mod_floor(pt.e, F.q() - 1) % p, t = mod_floor(pt.e, F.q() - 1) / p;
  switch (pt.module) {
    case H0Module::U: return induced_module(tower, mod_floor(pt.d, F.q() - 1), mod_floor(pt.e, F.q() - 1));
    case H0Module::V: return serre_weight(tower, pt.r, pt.s, l, t);
    case H0Module::W: return cokernel(psi_embed(tower, pt.r, pt.s, l, t)).quotient.module;
    case H0Module::Wss: {
      std::vector<ModulePtr> parts;
      for (const auto& lab : w_constituents(p, pt.r, pt.s, pt.e)) parts.push_back(serre_weight(tower, lab));
      return direct_sum(parts);
    }
  }
  return nullptr;
}

inline H0Report compute_h0(const TowerPtr& tower, const H0Point& pt, std::size_t class_number = 1) {
  H0Report rep;
  rep.point = pt;
  rep.class_number = class_number;
  const GroupSpec group = pt.t1 ? GroupSpec::t1(pt.f) : GroupSpec::sl();
  rep.group = group.name();
  const ModulePtr m = h0_module(tower, pt);
  rep.descriptor = std::string(to_string(pt.module)) + " " + m->descriptor();
  rep.computed = fixed_space(*m, group).dim();
  rep.expected = expected_h0(tower->p(), pt);
  rep.citation = std::string(to_string(pt.lemma)) + "(" + std::to_string(pt.item) + ")";
  return rep;
}

/// Default parameter sweep for one lemma and unit order f.
inline std::vector<H0Point> lemma_sweep(int p, Lemma lemma, int f, std::uint64_t seed = 7) {
  const int qm1 = p * p - 1;
  std::vector<H0Point> pts;
  switch (lemma) {
    case Lemma::Lem2:
      for (std::int64_t d : {std::int64_t{0}, std::int64_t{5}, std::int64_t{qm1}})
        for (int n = 0; n <= 11; ++n)
          for (bool t1 : {false, true}) {
            H0Point pt{lemma, t1 ? 2 : 1, H0Module::U, t1};
            pt.d = d;
            pt.e = n;
            pt.f = f;
            pts.push_back(pt);
          }
      break;
    case Lemma::Lem3: {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> dig(0, p - 1);
      for (int k = 0; k < 200; ++k) {
        // a quarter of the points sit at r = s = 0, where the answer depends on the twist
        const int r = k % 4 == 0 ? 0 : dig(rng), s = k % 4 == 0 ? 0 : dig(rng);
        const int l = dig(rng), t = dig(rng);
        for (bool t1 : {false, true}) {
          H0Point pt{lemma, t1 ? 2 : 1, H0Module::V, t1, r, s};
          pt.e = l + static_cast<std::int64_t>(p) * t;
          pt.f = f;
          pts.push_back(pt);
        }
      }
      break;
    }
    case Lemma::Lem36: {
      const std::vector<std::pair<int, int>> shapes = {{p - 1, p - 1}, {1, p - 2}, {p - 2, 1}, {2, 3 % p}, {0, 0}};
      for (auto [r, s] : shapes)
        for (int e = 0; e < qm1; ++e)
          for (int item = 1; item <= 4; ++item) {
            const bool t1 = item >= 3;
            H0Point pt{lemma, item, item % 2 == 1 ? H0Module::Wss : H0Module::W, t1, r, s};
            pt.e = e;
            pt.f = f;
            pts.push_back(pt);
          }
      break;
    }
    case Lemma::Lem237:
      for (auto [r, s] : {std::pair{1, p - 2}, std::pair{p - 2, 1}})
        for (int e = 0; e < qm1; ++e)
          for (int item = 1; item <= 2; ++item) {
            H0Point pt{lemma, item, H0Module::W, item == 2, r, s};
            pt.e = e;
            pt.f = f;
            pts.push_back(pt);
          }
      break;
  }
  return pts;
}

struct LemmaSummary {
  std::size_t passed = 0, failed = 0, skipped = 0;
};

inline LemmaSummary summarize(const std::vector<H0Report>& reps) {
  LemmaSummary s;
  for (const auto& r : reps) {
    if (r.skipped())
      ++s.skipped;
    else if (r.match())
      ++s.passed;
    else
      ++s.failed;
  }
  return s;
}

inline std::vector<H0Report> verify_lemma(const TowerPtr& tower, const std::vector<H0Point>& points,
                                          std::size_t threads = 1, std::size_t class_number = 1) {
  std::vector<H0Report> out(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) { out[i] = compute_h0(tower, points[i], class_number); });
  return out;
}

inline std::vector<H0Report> verify_lemma(const TowerPtr& tower, Lemma lemma, int f, std::size_t threads = 1,
                                          bool strict = false) {
  if (strict && lemma == Lemma::Lem237 && tower->p() <= 5)
    throw Error(ErrorCode::StrictViolation, "lem2_3_7 requires p > 5");
  return verify_lemma(tower, lemma_sweep(tower->p(), lemma, f), threads);
}

/// Scalar of a degree-0 Hecke operator on invariants: the index N + 1.
inline std::int64_t h0_hecke_scalar(std::int64_t norm) {
  if (norm < 2) throw Error(ErrorCode::Usage, "ideal norm must be at least 2");
  return norm + 1;
}

struct ConnectingReport {
  std::size_t h0_u = 0;
  std::size_t h0_w = 0;
  bool image_nonzero = false;
  bool ok() const { return image_nonzero; }
};

/// For r = s = p-1: the SL-invariants of U^e_0 project to a nonzero class in W.
inline ConnectingReport connecting_nullity_check(const TowerPtr& tower, std::int64_t e) {
  const FieldTower& F = *tower;
  const int p = F.p();
  const std::int64_t ee = mod_floor(e, F.q() - 1);
  const ModMap psi = psi_embed(tower, p - 1, p - 1, ee % p, ee / p);
  const CokernelData w = cokernel(psi);
  ConnectingReport rep;
  const Subspace fu = fixed_space(*psi.target(), GroupSpec::sl());
  rep.h0_u = fu.dim();
  rep.h0_w = fixed_space(*w.quotient.module, GroupSpec::sl()).dim();
  for (std::size_t i = 0; i < fu.dim(); ++i)
    if (!is_zero_vec(w.quotient.project(F, fu.basis().row(i)))) rep.image_nonzero = true;
  return rep;
}

}  // namespace weightred
