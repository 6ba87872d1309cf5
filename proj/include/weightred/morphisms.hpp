#pragma once

// Equivariant maps, sub- and quotient modules, spinning, and the embedding
// V^{l,t}_{r,s} -> U^{l+pt}_{r+ps}.

#include <optional>
#include <string>
#include <vector>

#include "weightred/modrep.hpp"

namespace weightred {

inline bool same_module(const ModulePtr& a, const ModulePtr& b) {
  if (a == b) return true;
  return a && b && a->dim() == b->dim() && a->descriptor() == b->descriptor() && a->tower() == b->tower();
}

/// Checks M A_src(g) = A_tgt(g) M for each g.
inline bool is_equivariant(const GModule& src, const GModule& tgt, const Mat& m, std::span<const GrpElem> gens) {
  const FieldTower& F = src.field();
  for (const auto& g : gens)
    if (!(multiply(F, m, src.action_cached(g)) == multiply(F, tgt.action_cached(g), m))) return false;
  return true;
}

/// A G-map. Construction through make() verifies equivariance on the GL generators.
class ModMap {
 public:
  static ModMap make(ModulePtr src, ModulePtr tgt, Mat m) {
    const auto gens = group_generators(src->field(), GroupSpec::gl());
    return make(std::move(src), std::move(tgt), std::move(m), gens);
  }
  static ModMap make(ModulePtr src, ModulePtr tgt, Mat m, std::span<const GrpElem> gens) {
    ModMap map = unchecked(std::move(src), std::move(tgt), std::move(m));
    if (!is_equivariant(*map.src_, *map.tgt_, map.m_, gens))
      throw Error(ErrorCode::NotEquivariant, "map " + map.src_->descriptor() + " -> " + map.tgt_->descriptor());
    return map;
  }
  /// For negative controls: skips the equivariance test.
  static ModMap unchecked(ModulePtr src, ModulePtr tgt, Mat m) {
    if (m.rows() != tgt->dim() || m.cols() != src->dim())
      throw Error(ErrorCode::DimensionMismatch, "map matrix shape does not match modules");
    ModMap map;
    map.src_ = std::move(src);
    map.tgt_ = std::move(tgt);
    map.m_ = std::move(m);
    return map;
  }

  const ModulePtr& source() const noexcept { return src_; }
  const ModulePtr& target() const noexcept { return tgt_; }
  const Mat& matrix() const noexcept { return m_; }
  const FieldTower& field() const noexcept { return src_->field(); }

  std::size_t rank() const { return weightred::rank(field(), m_); }
  bool injective() const { return rank() == src_->dim(); }
  bool surjective() const { return rank() == tgt_->dim(); }
  Subspace image() const { return weightred::image(field(), m_); }
  Subspace kernel() const { return kernel_basis(field(), m_); }

 private:
  ModMap() = default;
  ModulePtr src_, tgt_;
  Mat m_;
};

inline ModMap compose(const ModMap& second, const ModMap& first) {
  if (!same_module(first.target(), second.source()))
    throw Error(ErrorCode::NotComposable, first.target()->descriptor() + " vs " + second.source()->descriptor());
  return ModMap::unchecked(first.source(), second.target(), multiply(first.field(), second.matrix(), first.matrix()));
}

// ---------------------------------------------------------------------------
// Sub- and quotient modules

/// Checks that S is stable under each generator.
inline bool is_stable(const GModule& m, const Subspace& s, std::span<const GrpElem> gens) {
  const FieldTower& F = m.field();
  for (const auto& g : gens) {
    const Mat a = m.action_cached(g);
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!s.contains(F, apply(F, a, s.basis().row(i)))) return false;
  }
  return true;
}

struct SubmoduleData {
  ModulePtr module;  // action in the echelon basis of `space`
  Subspace space;
  Mat inclusion;  // ambient dim x sub dim
};

/// The submodule on a stable subspace. Stability is checked on the GL generators.
inline SubmoduleData submodule(const ModulePtr& ambient, const Subspace& s) {
  const FieldTower& F = ambient->field();
  if (s.ambient() != ambient->dim()) throw Error(ErrorCode::AmbientMismatch, "subspace ambient dimension");
  if (!is_stable(*ambient, s, group_generators(F, GroupSpec::gl())))
    throw Error(ErrorCode::NotEquivariant, "subspace is not stable");
  const Mat inclusion = transpose(s.basis());
  auto action = [ambient, s](const GrpElem& g) {
    const FieldTower& F = ambient->field();
    const Mat a = ambient->action(g);
    Mat out(s.dim(), s.dim(), max_level(a.level(), s.level()));
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const Vec image = apply(F, a, s.basis().row(j));
      out.set_column(j, s.coordinates(image));
    }
    return out;
  };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.dim(); ++i) labels.push_back("b" + std::to_string(i));
  auto mod = std::make_shared<GModule>(ambient->tower(), s.dim(), max_level(ambient->level(), s.level()),
                                       Provenance::Submodule,
                                       "sub(" + ambient->descriptor() + "," + std::to_string(s.dim()) + ")",
                                       std::move(labels), std::move(action));
  return {mod, s, inclusion};
}

struct QuotientData {
  ModulePtr module;  // action in the non-pivot coordinates
  Subspace kernel;
  Mat projection;  // quotient dim x ambient dim, equivariant
  Mat section;     // ambient dim x quotient dim, a linear right inverse; not equivariant
  std::vector<std::size_t> coords;

  Vec project(const FieldTower& F, std::span<const Elem> v) const { return apply(F, projection, v); }
};

inline QuotientData quotient(const ModulePtr& ambient, const Subspace& s) {
  const FieldTower& F = ambient->field();
  if (s.ambient() != ambient->dim()) throw Error(ErrorCode::AmbientMismatch, "subspace ambient dimension");
  if (!is_stable(*ambient, s, group_generators(F, GroupSpec::gl())))
    throw Error(ErrorCode::NotEquivariant, "kernel is not stable");
  QuotientData q;
  q.kernel = s;
  q.coords = complement_coordinates(s);
  q.projection = quotient_map(F, s);
  q.section = Mat(ambient->dim(), q.coords.size(), s.level());
  for (std::size_t j = 0; j < q.coords.size(); ++j) q.section(q.coords[j], j) = F.one();
  const auto coords = q.coords;
  auto action = [ambient, s, coords](const GrpElem& g) {
    const FieldTower& F = ambient->field();
    const Mat a = ambient->action(g);
    Mat out(coords.size(), coords.size(), max_level(a.level(), s.level()));
    for (std::size_t j = 0; j < coords.size(); ++j) {
      const Vec red = s.reduce(F, a.column(coords[j]));
      for (std::size_t i = 0; i < coords.size(); ++i) out(i, j) = red[coords[i]];
    }
    return out;
  };
  std::vector<std::string> labels;
  for (auto c : q.coords) labels.push_back("[" + ambient->basis()[c] + "]");
  q.module = std::make_shared<GModule>(ambient->tower(), q.coords.size(), max_level(ambient->level(), s.level()),
                                       Provenance::Quotient,
                                       ambient->descriptor() + "/" + std::to_string(s.dim()), std::move(labels),
                                       std::move(action));
  return q;
}

/// Cokernel of an injective map, with its projection as a G-map.
struct CokernelData {
  QuotientData quotient;
  ModMap projection;
};

inline CokernelData cokernel(const ModMap& m) {
  if (!m.injective())
    throw Error(ErrorCode::NotInjective, "cokernel of non-injective map " + m.source()->descriptor());
  QuotientData q = quotient(m.target(), m.image());
  ModMap proj = ModMap::make(m.target(), q.module, q.projection);
  return {std::move(q), std::move(proj)};
}

inline ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
  if (parts.empty()) throw Error(ErrorCode::Usage, "empty direct sum");
  std::size_t n = 0;
  std::string desc;
  std::vector<std::string> labels;
  for (const auto& m : parts) {
    n += m->dim();
    desc += (desc.empty() ? "" : "+") + m->descriptor();
    for (const auto& b : m->basis()) labels.push_back(m->descriptor() + ":" + b);
  }
  Level level = Level::Quadratic;
  for (const auto& m : parts) level = max_level(level, m->level());
  auto action = [parts, n, level](const GrpElem& g) {
    Mat out(n, n, level);
    std::size_t off = 0;
    for (const auto& m : parts) {
      const Mat a = m->action(g);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(off + i, off + j) = a(i, j);
      off += m->dim();
    }
    return out;
  };
  return std::make_shared<GModule>(parts.front()->tower(), n, level, Provenance::DirectSum, desc,
                                   std::move(labels), std::move(action));
}

// ---------------------------------------------------------------------------
// Spinning

/// Smallest subspace containing the seeds and stable under the matrices.
inline Subspace spin_matrices(const FieldTower& F, std::size_t dim, const std::vector<Vec>& seeds,
                              const std::vector<Mat>& mats) {
  EchelonBuilder eb(dim);
  std::vector<Vec> queue;
  for (const auto& v : seeds)
    if (auto r = eb.insert(F, v)) queue.push_back(*r);
  for (std::size_t k = 0; k < queue.size() && eb.dim() < dim; ++k) {
    for (const auto& a : mats) {
      if (auto r = eb.insert(F, apply(F, a, queue[k]))) queue.push_back(*r);
    }
  }
  return eb.subspace(F);
}

inline Subspace spin(const GModule& m, const std::vector<Vec>& seeds, std::span<const GrpElem> gens) {
  return spin_matrices(m.field(), m.dim(), seeds, m.actions(gens));
}

// ---------------------------------------------------------------------------
// Functions on F_q^2 in the delta basis

/// Delta-basis coordinates of a homogeneous function given by its values at the canonical points.
template <class Fn>
Vec evaluate_on_points(const FieldTower& F, Fn&& fn) {
  Vec v(proj_count(F));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [x, y] = proj_coords(F, ProjPoint{i});
    v[i] = fn(x, y);
  }
  return v;
}

/// (a, b) -> a^i b^j, with 0^0 = 1.
inline Vec monomial_function(const FieldTower& F, std::uint64_t i, std::uint64_t j) {
  return evaluate_on_points(F, [&](Elem a, Elem b) { return F.mul(F.pow(a, i), F.pow(b, j)); });
}

/// Degree index and twist of the target of the embedding.
inline std::pair<int, int> psi_target(const FieldTower& F, int r, int s, std::int64_t l, std::int64_t t) {
  const int qm1 = F.q() - 1;
  return {mod_floor(r + static_cast<std::int64_t>(F.p()) * s, qm1),
          mod_floor(l + static_cast<std::int64_t>(F.p()) * t, qm1)};
}

/// f (x) g -> ((a, b) -> f(a, b) g(a^p, b^p)) from V^{l,t}_{r,s} into U^{l+pt}_{r+ps}.
inline ModMap psi_embed_into(const TowerPtr& tower, int r, int s, std::int64_t l, std::int64_t t,
                             const ModulePtr& target) {
  const FieldTower& F = *tower;
  if (r < 0 || s < 0 || r > F.p() - 1 || s > F.p() - 1)
    throw Error(ErrorCode::WeightOutOfRange, "embedding needs 0 <= r, s <= p-1");
  auto src = serre_weight(tower, r, s, l, t);
  const auto p = static_cast<std::uint64_t>(F.p());
  Mat m(target->dim(), src->dim(), Level::Quadratic);
  std::size_t col = 0;
  for (int i = 0; i <= r; ++i)
    for (int ip = 0; ip <= s; ++ip, ++col) {
      const Vec f = evaluate_on_points(F, [&](Elem a, Elem b) {
        const Elem first = F.mul(F.pow(a, static_cast<std::uint64_t>(i)), F.pow(b, static_cast<std::uint64_t>(r - i)));
        const Elem second = F.mul(F.pow(a, p * static_cast<std::uint64_t>(ip)),
                                  F.pow(b, p * static_cast<std::uint64_t>(s - ip)));
        return F.mul(first, second);
      });
      m.set_column(col, f);
    }
  return ModMap::make(src, target, std::move(m));
}

inline ModMap psi_embed(const TowerPtr& tower, int r, int s, std::int64_t l, std::int64_t t) {
  if (r < 0 || s < 0 || r > tower->p() - 1 || s > tower->p() - 1)
    throw Error(ErrorCode::WeightOutOfRange, "embedding needs 0 <= r, s <= p-1");
  const auto [d, e] = psi_target(*tower, r, s, l, t);
  return psi_embed_into(tower, r, s, l, t, induced_module(tower, d, e));
}

// ---------------------------------------------------------------------------
// Exact sequences

struct ExactnessNode {
  std::size_t index = 0;  // position of the module in the chain
  std::string module;
  std::string check;  // "injective", "image=kernel", "surjective"
  std::size_t dim = 0;
  bool ok = false;
};

struct ExactnessReport {
  std::vector<ExactnessNode> nodes;
  std::optional<std::size_t> first_failure;
  bool ok() const { return !first_failure.has_value(); }
};

/// Exactness of 0 -> A_0 -> A_1 -> ... -> A_k -> 0 for consecutive maps.
inline ExactnessReport exact_sequence_check(const std::vector<ModMap>& maps) {
  if (maps.empty()) throw Error(ErrorCode::NotComposable, "empty chain");
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!same_module(maps[i].target(), maps[i + 1].source()))
      throw Error(ErrorCode::NotComposable,
                  "map " + std::to_string(i) + " target differs from map " + std::to_string(i + 1) + " source");
  const FieldTower& F = maps.front().field();
  ExactnessReport rep;
  auto push = [&](ExactnessNode node) {
    if (!node.ok && !rep.first_failure) rep.first_failure = node.index;
    rep.nodes.push_back(std::move(node));
  };
  push({0, maps.front().source()->descriptor(), "injective", maps.front().source()->dim(), maps.front().injective()});
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    const bool ok = maps[i].image() == kernel_basis(F, maps[i + 1].matrix());
    push({i + 1, maps[i].target()->descriptor(), "image=kernel", maps[i].target()->dim(), ok});
  }
  push({maps.size(), maps.back().target()->descriptor(), "surjective", maps.back().target()->dim(),
        maps.back().surjective()});
  return rep;
}

}  // namespace weightred
