#pragma once

// Groups and modules for GL_2(F_q), q = p^2.
//
// Action matrices act on column vectors, A(gh) = A(g) A(h). Polynomials carry
// the substitution action  (g.P)(X, Y) = P(aX + cY, bX + dY)  for
// g = [[a, b], [c, d]], i.e. P(v g) with v = (X, Y) a row vector. The induced
// module U_d uses (g.F)(v) = F(v g). Both are left actions and are compatible
// with the embedding f (x) g -> f(a, b) g(a^p, b^p).

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "weightred/gf.hpp"
#include "weightred/linalg.hpp"

namespace weightred {

using TowerPtr = std::shared_ptr<const FieldTower>;

inline TowerPtr make_tower(int p, bool strict = false) {
  return std::make_shared<const FieldTower>(FieldTower::build(p, strict));
}

inline int mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// ---------------------------------------------------------------------------
// Group elements

struct GrpElem {
  Elem a, b, c, d;

  friend bool operator==(const GrpElem&, const GrpElem&) = default;
  friend auto operator<=>(const GrpElem&, const GrpElem&) = default;
};

inline Elem det(const FieldTower& F, const GrpElem& g) { return F.sub(F.mul(g.a, g.d), F.mul(g.b, g.c)); }

inline GrpElem make_grp(const FieldTower& F, Elem a, Elem b, Elem c, Elem d) {
  GrpElem g{a, b, c, d};
  if (det(F, g).is_zero()) throw Error(ErrorCode::ZeroElement, "singular matrix: determinant is zero");
  return g;
}

inline GrpElem grp_identity() { return {Elem{1}, Elem{0}, Elem{0}, Elem{1}}; }
inline GrpElem grp_diag(Elem x, Elem y) { return {x, Elem{0}, Elem{0}, y}; }

inline GrpElem grp_mul(const FieldTower& F, const GrpElem& x, const GrpElem& y) {
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

inline GrpElem grp_inv(const FieldTower& F, const GrpElem& g) {
  const Elem di = F.inv(det(F, g));
  return {F.mul(g.d, di), F.neg(F.mul(g.b, di)), F.neg(F.mul(g.c, di)), F.mul(g.a, di)};
}

inline GrpElem grp_pow(const FieldTower& F, GrpElem g, std::uint64_t n) {
  GrpElem r = grp_identity();
  while (n > 0) {
    if (n & 1u) r = grp_mul(F, r, g);
    g = grp_mul(F, g, g);
    n >>= 1u;
  }
  return r;
}

/// Entrywise Frobenius.
inline GrpElem grp_frobenius(const FieldTower& F, const GrpElem& g) {
  return {F.frobenius(g.a), F.frobenius(g.b), F.frobenius(g.c), F.frobenius(g.d)};
}

template <class Rng>
GrpElem random_grp(const FieldTower& F, Rng& rng) {
  for (;;) {
    GrpElem g{F.random(Level::Quadratic, rng), F.random(Level::Quadratic, rng), F.random(Level::Quadratic, rng),
              F.random(Level::Quadratic, rng)};
    if (!det(F, g).is_zero()) return g;
  }
}

enum class GroupKind { SL, GL, T1, U, B };

struct GroupSpec {
  GroupKind kind = GroupKind::GL;
  int unit_order = 0;  // only for T1

  static GroupSpec sl() { return {GroupKind::SL, 0}; }
  static GroupSpec gl() { return {GroupKind::GL, 0}; }
  static GroupSpec t1(int f) { return {GroupKind::T1, f}; }
  static GroupSpec upper_unipotent() { return {GroupKind::U, 0}; }
  static GroupSpec borel() { return {GroupKind::B, 0}; }

  std::string name() const {
    switch (kind) {
      case GroupKind::SL: return "SL";
      case GroupKind::GL: return "GL";
      case GroupKind::T1: return "T1(" + std::to_string(unit_order) + ")";
      case GroupKind::U: return "U";
      case GroupKind::B: return "B";
    }
    return "?";
  }
};

/// Generating sets. SL_2(F_q) is generated by the elementary matrices with
/// off-diagonal entry in {1, w}, w the F_p-basis element of F_q.
inline std::vector<GrpElem> group_generators(const FieldTower& F, const GroupSpec& spec) {
  const Elem one = F.one(), zero = F.zero(), w = F.w();
  const std::vector<GrpElem> sl = {{one, one, zero, one}, {one, w, zero, one}, {one, zero, one, one}, {one, zero, w, one}};
  switch (spec.kind) {
    case GroupKind::SL: return sl;
    case GroupKind::GL: {
      auto g = sl;
      g.push_back(grp_diag(F.g1(), one));
      return g;
    }
    case GroupKind::T1: {
      const int qm1 = F.q() - 1;
      if (spec.unit_order <= 0 || qm1 % spec.unit_order != 0)
        throw Error(ErrorCode::BadUnitOrder, "unit order " + std::to_string(spec.unit_order) + " does not divide q-1");
      auto g = sl;
      const Elem eps = F.pow(F.g1(), static_cast<std::uint64_t>(qm1 / spec.unit_order));
      g.push_back(grp_diag(eps, one));
      return g;
    }
    case GroupKind::U: return {{one, one, zero, one}, {one, w, zero, one}, grp_diag(F.g1(), one)};
    case GroupKind::B: return {{one, one, zero, one}, {one, w, zero, one}, grp_diag(F.g1(), one), grp_diag(one, F.g1())};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Projective line

/// Canonical points (1, y), indexed by the code of y, followed by (0, 1) at index q.
struct ProjPoint {
  std::size_t index = 0;

  friend bool operator==(ProjPoint, ProjPoint) = default;
};

inline std::size_t proj_count(const FieldTower& F) { return static_cast<std::size_t>(F.q()) + 1; }

inline std::pair<Elem, Elem> proj_coords(const FieldTower& F, ProjPoint pt) {
  if (pt.index == static_cast<std::size_t>(F.q())) return {F.zero(), F.one()};
  return {F.one(), Elem{static_cast<std::uint32_t>(pt.index)}};
}

/// Writes a nonzero vector as lambda * P with P canonical.
inline std::pair<Elem, ProjPoint> proj_canonicalize(const FieldTower& F, Elem x, Elem y) {
  if (!x.is_zero()) return {x, ProjPoint{F.div(y, x).code}};
  if (y.is_zero()) throw Error(ErrorCode::ZeroElement, "zero vector has no projective point");
  return {y, ProjPoint{static_cast<std::size_t>(F.q())}};
}

/// Row vector times matrix.
inline std::pair<Elem, Elem> row_times(const FieldTower& F, Elem x, Elem y, const GrpElem& g) {
  return {F.add(F.mul(x, g.a), F.mul(y, g.c)), F.add(F.mul(x, g.b), F.mul(y, g.d))};
}

// ---------------------------------------------------------------------------
// Weight labels

/// Canonical label of V^{l,t}_{r,s}: twist e = l + p t reduced mod q - 1.
/// r or s equal to -1 denotes the zero module.
struct WeightLabel {
  int r = 0;
  int s = 0;
  int e = 0;

  static WeightLabel make(int p, int r, int s, std::int64_t l, std::int64_t t) {
    return {r, s, mod_floor(l + static_cast<std::int64_t>(p) * t, static_cast<std::int64_t>(p) * p - 1)};
  }
  static WeightLabel twist(int p, int r, int s, std::int64_t e) {
    return {r, s, mod_floor(e, static_cast<std::int64_t>(p) * p - 1)};
  }

  bool is_zero() const noexcept { return r < 0 || s < 0; }
  int dim() const noexcept { return is_zero() ? 0 : (r + 1) * (s + 1); }
  int l(int p) const noexcept { return e % p; }
  int t(int p) const noexcept { return e / p; }

  std::string to_string(int p) const {
    return "V^{" + std::to_string(l(p)) + "," + std::to_string(t(p)) + "}_{" + std::to_string(r) + "," +
           std::to_string(s) + "}";
  }

  friend bool operator==(const WeightLabel&, const WeightLabel&) = default;
  friend auto operator<=>(const WeightLabel&, const WeightLabel&) = default;
};

// ---------------------------------------------------------------------------
// Modules

enum class Provenance { Weight, Induced, BorelModel, Quotient, Submodule, DirectSum, Custom };

constexpr std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Weight: return "weight";
    case Provenance::Induced: return "induced";
    case Provenance::BorelModel: return "borel-model";
    case Provenance::Quotient: return "quotient";
    case Provenance::Submodule: return "submodule";
    case Provenance::DirectSum: return "direct-sum";
    case Provenance::Custom: return "custom";
  }
  return "?";
}

/// A finite-dimensional representation given by an element -> matrix rule.
class GModule {
 public:
  using ActionFn = std::function<Mat(const GrpElem&)>;

  GModule(TowerPtr tower, std::size_t dim, Level level, Provenance prov, std::string descriptor,
          std::vector<std::string> basis, ActionFn action)
      : tower_(std::move(tower)),
        dim_(dim),
        level_(level),
        prov_(prov),
        descriptor_(std::move(descriptor)),
        basis_(std::move(basis)),
        action_(std::move(action)),
        cache_(std::make_shared<Cache>()) {}

  const TowerPtr& tower() const noexcept { return tower_; }
  const FieldTower& field() const noexcept { return *tower_; }
  std::size_t dim() const noexcept { return dim_; }
  Level level() const noexcept { return level_; }
  Provenance provenance() const noexcept { return prov_; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  const std::vector<std::string>& basis() const noexcept { return basis_; }

  Mat action(const GrpElem& g) const {
    if (dim_ == 0) return Mat(0, 0, level_);
    return action_(g);
  }

  /// Memoized action, for generator sets that are applied repeatedly.
  Mat action_cached(const GrpElem& g) const {
    {
      std::shared_lock lock(cache_->mutex);
      if (auto it = cache_->entries.find(g); it != cache_->entries.end()) return it->second;
    }
    Mat m = action(g);
    std::unique_lock lock(cache_->mutex);
    cache_->entries.emplace(g, m);
    return m;
  }

  std::vector<Mat> actions(std::span<const GrpElem> gens) const {
    std::vector<Mat> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(action_cached(g));
    return out;
  }

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<GrpElem, Mat> entries;
  };

  TowerPtr tower_;
  std::size_t dim_;
  Level level_;
  Provenance prov_;
  std::string descriptor_;
  std::vector<std::string> basis_;
  ActionFn action_;
  std::shared_ptr<Cache> cache_;
};

using ModulePtr = std::shared_ptr<const GModule>;

/// Matrix of P -> P(v g) on homogeneous polynomials of degree r in the basis
/// X^i Y^{r-i}, i = 0..r (row index = power of X).
inline Mat symmetric_power_matrix(const FieldTower& F, int r, const GrpElem& g) {
  const auto n = static_cast<std::size_t>(r + 1);
  Mat m(n, n, Level::Quartic);
  // X -> aX + cY, Y -> bX + dY; polynomials stored by power of X.
  auto times_linear = [&F](const Vec& poly, Elem x_coef, Elem y_coef) {
    Vec out(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      out[k + 1] = F.add(out[k + 1], F.mul(poly[k], x_coef));
      out[k] = F.add(out[k], F.mul(poly[k], y_coef));
    }
    return out;
  };
  for (int i = 0; i <= r; ++i) {
    Vec poly{F.one()};
    for (int k = 0; k < i; ++k) poly = times_linear(poly, g.a, g.c);
    for (int k = 0; k < r - i; ++k) poly = times_linear(poly, g.b, g.d);
    for (std::size_t j = 0; j < n; ++j) m(j, static_cast<std::size_t>(i)) = poly[j];
  }
  m.set_level(entry_level(F, m.data()));
  return m;
}

inline Mat kronecker(const FieldTower& F, const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols(), max_level(a.level(), b.level()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t u = 0; u < b.rows(); ++u)
        for (std::size_t v = 0; v < b.cols(); ++v) k(i * b.rows() + u, j * b.cols() + v) = F.mul(x, b(u, v));
    }
  return k;
}

inline void check_weight_range(const FieldTower& F, int r, int s) {
  const int p = F.p();
  if (r < -1 || s < -1 || r > p - 1 || s > p - 1)
    throw Error(ErrorCode::WeightOutOfRange,
                "(r, s) = (" + std::to_string(r) + ", " + std::to_string(s) + ") outside [0, p-1]");
}

/// V^{l,t}_{r,s} = Sym^r (x) det^l (x) (Sym^s)^tau (x) (det^t)^tau with basis
/// X^i Y^{r-i} (x) X^{i'} Y^{s-i'} at index i (s+1) + i'.
inline ModulePtr serre_weight(const TowerPtr& tower, int r, int s, std::int64_t l, std::int64_t t) {
  const FieldTower& F = *tower;
  check_weight_range(F, r, s);
  if (l < 0 || t < 0) throw Error(ErrorCode::WeightOutOfRange, "twist digits must be non-negative");
  const WeightLabel label = WeightLabel::make(F.p(), r, s, l, t);
  const std::string desc = label.to_string(F.p());
  if (label.is_zero())
    return std::make_shared<GModule>(tower, 0, Level::Quadratic, Provenance::Weight, desc, std::vector<std::string>{},
                                     [](const GrpElem&) { return Mat(0, 0); });
  std::vector<std::string> basis;
  for (int i = 0; i <= r; ++i)
    for (int ip = 0; ip <= s; ++ip)
      basis.push_back("X^" + std::to_string(i) + "Y^" + std::to_string(r - i) + "(x)X^" + std::to_string(ip) + "Y^" +
                      std::to_string(s - ip));
  const auto e = static_cast<std::uint64_t>(label.e);
  auto action = [tower, r, s, e](const GrpElem& g) {
    const FieldTower& F = *tower;
    const Mat first = symmetric_power_matrix(F, r, g);
    const Mat second = symmetric_power_matrix(F, s, grp_frobenius(F, g));
    Mat m = scale(F, kronecker(F, first, second), F.pow(det(F, g), e));
    m.set_level(Level::Quadratic);
    return m;
  };
  return std::make_shared<GModule>(tower, static_cast<std::size_t>(label.dim()), Level::Quadratic, Provenance::Weight,
                                   desc, std::move(basis), std::move(action));
}

inline ModulePtr serre_weight(const TowerPtr& tower, const WeightLabel& label) {
  return serre_weight(tower, label.r, label.s, label.l(tower->p()), label.t(tower->p()));
}

inline std::vector<std::string> proj_basis_labels(const FieldTower& F, const std::string& prefix) {
  std::vector<std::string> out;
  for (int y = 0; y < F.q(); ++y) out.push_back(prefix + "(1," + std::to_string(y) + ")");
  out.push_back(prefix + "(0,1)");
  return out;
}

inline void check_degree(const FieldTower& F, std::int64_t d) {
  if (d < 0 || d > F.q() - 2)
    throw Error(ErrorCode::DegreeOutOfRange, "d = " + std::to_string(d) + " outside [0, q-2]");
}

/// Value at v of the degree-d function supported on the line through P with value 1 at P.
inline Elem induced_delta_value(const FieldTower& F, std::int64_t d, ProjPoint pt, Elem x, Elem y) {
  const auto [lambda, canon] = proj_canonicalize(F, x, y);
  if (!(canon == pt)) return F.zero();
  return F.pow(lambda, static_cast<std::uint64_t>(d));
}

/// U^e_d: degree-d homogeneous functions on F_q^2 minus the origin, in the delta
/// basis of the q + 1 canonical points, with (g.F)(v) = det(g)^e F(v g).
inline ModulePtr induced_module(const TowerPtr& tower, std::int64_t d, std::int64_t e) {
  const FieldTower& F = *tower;
  check_degree(F, d);
  if (e < 0) throw Error(ErrorCode::DegreeOutOfRange, "twist e must be non-negative");
  const int qm1 = F.q() - 1;
  const auto ee = static_cast<std::uint64_t>(mod_floor(e, qm1));
  const auto dd = static_cast<std::uint64_t>(d);
  auto action = [tower, dd, ee](const GrpElem& g) {
    const FieldTower& F = *tower;
    const std::size_t n = proj_count(F);
    Mat m(n, n, Level::Quadratic);
    const Elem twist = F.pow(det(F, g), ee);
    for (std::size_t qi = 0; qi < n; ++qi) {
      const auto [x, y] = proj_coords(F, ProjPoint{qi});
      const auto [u, v] = row_times(F, x, y, g);
      const auto [lambda, pt] = proj_canonicalize(F, u, v);
      m(qi, pt.index) = F.mul(twist, F.pow(lambda, dd));
    }
    return m;
  };
  return std::make_shared<GModule>(tower, proj_count(F), Level::Quadratic, Provenance::Induced,
                                   "U^" + std::to_string(ee) + "_" + std::to_string(d), proj_basis_labels(F, "delta"),
                                   std::move(action));
}

/// Coset representative of B\G with bottom row P: [[0, -1], [1, y]] or I.
inline GrpElem borel_coset_rep(const FieldTower& F, ProjPoint pt) {
  if (pt.index == static_cast<std::size_t>(F.q())) return grp_identity();
  return {F.zero(), F.neg(F.one()), F.one(), Elem{static_cast<std::uint32_t>(pt.index)}};
}

/// Ind_B^G(chi^d) (x) det^e as functions on G with f(b h) = chi(b)^d f(h),
/// (g.f)(h) = f(h g), in the basis of functions supported on one coset.
inline ModulePtr borel_model(const TowerPtr& tower, std::int64_t d, std::int64_t e = 0) {
  const FieldTower& F = *tower;
  check_degree(F, d);
  const auto ee = static_cast<std::uint64_t>(mod_floor(e, F.q() - 1));
  const auto dd = static_cast<std::uint64_t>(d);
  auto action = [tower, dd, ee](const GrpElem& g) {
    const FieldTower& F = *tower;
    const std::size_t n = proj_count(F);
    Mat m(n, n, Level::Quadratic);
    const Elem twist = F.pow(det(F, g), ee);
    for (std::size_t qi = 0; qi < n; ++qi) {
      const GrpElem hg = grp_mul(F, borel_coset_rep(F, ProjPoint{qi}), g);
      const auto [lambda, pt] = proj_canonicalize(F, hg.c, hg.d);
      const GrpElem bmat = grp_mul(F, hg, grp_inv(F, borel_coset_rep(F, pt)));
      if (!bmat.c.is_zero()) throw Error(ErrorCode::InternalMismatch, "coset decomposition is not upper triangular");
      m(qi, pt.index) = F.mul(twist, F.pow(bmat.d, dd));
    }
    return m;
  };
  return std::make_shared<GModule>(tower, proj_count(F), Level::Quadratic, Provenance::BorelModel,
                                   "Ind_B^G(chi^" + std::to_string(d) + ")", proj_basis_labels(F, "coset"),
                                   std::move(action));
}

/// phi: U_d -> Ind_B^G(chi^d), F -> (h -> F(bottom row of h)).
inline Mat iso_phi(const FieldTower& F, std::int64_t d) {
  check_degree(F, d);
  const std::size_t n = proj_count(F);
  Mat m(n, n, Level::Quadratic);
  for (std::size_t qi = 0; qi < n; ++qi) {
    const GrpElem h = borel_coset_rep(F, ProjPoint{qi});
    for (std::size_t pi = 0; pi < n; ++pi) m(qi, pi) = induced_delta_value(F, d, ProjPoint{pi}, h.c, h.d);
  }
  return m;
}

/// psi: Ind_B^G(chi^d) -> U_d, f -> ((c, e) -> f(any matrix with bottom row (c, e))).
/// The completion [[a, b], [c, e]] is drawn at random when a seed is given.
inline Mat iso_psi(const FieldTower& F, std::int64_t d, std::optional<std::uint64_t> seed = std::nullopt) {
  check_degree(F, d);
  const std::size_t n = proj_count(F);
  std::mt19937_64 rng(seed.value_or(0));
  Mat m(n, n, Level::Quadratic);
  for (std::size_t pi = 0; pi < n; ++pi) {
    const auto [c, e] = proj_coords(F, ProjPoint{pi});
    GrpElem completion;
    if (seed) {
      for (;;) {
        completion = {F.random(Level::Quadratic, rng), F.random(Level::Quadratic, rng), c, e};
        if (!det(F, completion).is_zero()) break;
      }
    } else {
      completion = pi == static_cast<std::size_t>(F.q()) ? GrpElem{F.one(), F.one(), c, e}
                                                           : GrpElem{F.one(), F.sub(e, F.one()), c, e};
    }
    // f(completion) = chi^d(b) f(h_P') where completion = b h_P'
    const auto [lambda, pt] = proj_canonicalize(F, completion.c, completion.d);
    const GrpElem bmat = grp_mul(F, completion, grp_inv(F, borel_coset_rep(F, pt)));
    if (!bmat.c.is_zero()) throw Error(ErrorCode::InternalMismatch, "completion decomposition failed");
    m(pi, pt.index) = F.pow(bmat.d, static_cast<std::uint64_t>(d));
  }
  return m;
}

struct GradedSumReport {
  std::vector<std::size_t> dims;  // dim U_d for d = 0..q-2
  std::size_t total = 0;
  std::size_t expected = 0;
  std::size_t rank = 0;
  std::string method;  // "full" or "per-line"
  bool ok = false;
};

/// The q^2 - 1 delta functions (one per degree and point) are a basis of the
/// functions on F_q^2 minus the origin.
inline GradedSumReport graded_sum_check(const TowerPtr& tower) {
  const FieldTower& F = *tower;
  GradedSumReport rep;
  const int q = F.q();
  for (int d = 0; d <= q - 2; ++d) rep.dims.push_back(induced_module(tower, d, 0)->dim());
  for (auto x : rep.dims) rep.total += x;
  rep.expected = static_cast<std::size_t>(q) * q - 1;
  const auto fq = F.elements(Level::Quadratic);
  const std::size_t npts = proj_count(F);
  if (rep.expected <= 624) {
    rep.method = "full";
    Mat m(0, rep.expected, Level::Quadratic);
    for (Elem x : fq)
      for (Elem y : fq) {
        if (x.is_zero() && y.is_zero()) continue;
        Vec row;
        row.reserve(rep.expected);
        for (int d = 0; d <= q - 2; ++d)
          for (std::size_t pi = 0; pi < npts; ++pi) row.push_back(induced_delta_value(F, d, ProjPoint{pi}, x, y));
        m.append_row(row);
      }
    rep.rank = rank(F, m);
  } else {
    // Supports on distinct lines are disjoint, so independence is per line.
    rep.method = "per-line";
    for (std::size_t pi = 0; pi < npts; ++pi) {
      const auto [x0, y0] = proj_coords(F, ProjPoint{pi});
      Mat m(0, static_cast<std::size_t>(q - 1), Level::Quadratic);
      for (Elem lambda : fq) {
        if (lambda.is_zero()) continue;
        Vec row;
        const Elem x = F.mul(lambda, x0), y = F.mul(lambda, y0);
        for (int d = 0; d <= q - 2; ++d) row.push_back(induced_delta_value(F, d, ProjPoint{pi}, x, y));
        m.append_row(row);
      }
      rep.rank += rank(F, m);
    }
  }
  rep.ok = rep.total == rep.expected && rep.rank == rep.expected;
  return rep;
}

/// Checks A(gh) = A(g) A(h) and A(1) = I on random pairs.
template <class Rng>
bool check_homomorphism(const GModule& m, std::size_t pairs, Rng& rng) {
  const FieldTower& F = m.field();
  if (!(m.action(grp_identity()) == Mat::identity(m.dim()))) return false;
  for (std::size_t k = 0; k < pairs; ++k) {
    const GrpElem g = random_grp(F, rng), h = random_grp(F, rng);
    if (!(m.action(grp_mul(F, g, h)) == multiply(F, m.action(g), m.action(h)))) return false;
  }
  return true;
}

}  // namespace weightred
