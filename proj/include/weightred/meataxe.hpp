#pragma once

// Composition series by spinning, with Norton's irreducibility test, and
// identification of the factors by Brauer character.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "weightred/brauer.hpp"
#include "weightred/morphisms.hpp"

namespace weightred {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct MeataxeOptions {
  std::size_t vector_attempts = 20;
  std::size_t algebra_attempts = 10;
  std::size_t threads = 1;
};

struct SplitResult {
  std::optional<Subspace> sub;
  bool irreducible = false;  // certified by Norton's criterion
};

inline Mat inverse(const FieldTower& F, const Mat& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error(ErrorCode::NotSquare, "inverse of non-square matrix");
  Mat aug(n, 2 * n, a.level());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = F.one();
  }
  auto res = rref_unchecked(F, aug);
  if (res.rank < n || res.pivots[n - 1] != n - 1) throw Error(ErrorCode::NotInjective, "singular matrix");
  Mat out(n, n, a.level());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = res.reduced(i, n + j);
  return out;
}

inline std::vector<Mat> generator_matrices(const GModule& m) {
  std::vector<Mat> mats;
  for (const auto& a : m.actions(group_generators(m.field(), GroupSpec::gl()))) mats.push_back(lift(a, Level::Quartic));
  return mats;
}

/// Roots in F_{q^2} of a polynomial, in increasing code order.
inline std::vector<Elem> poly_roots(const FieldTower& F, const Vec& poly) {
  std::vector<Elem> roots;
  for (Elem x : F.elements(Level::Quartic))
    if (poly_eval(F, poly, x).is_zero()) roots.push_back(x);
  return roots;
}

/// One search for a proper nonzero submodule: random vector spins, then random
/// algebra elements whose eigenvectors are spun under the action and (for the
/// dual) under the transposes.
inline SplitResult split_module(const GModule& m, std::uint64_t seed, const MeataxeOptions& opt = {}) {
  const FieldTower& F = m.field();
  const std::size_t n = m.dim();
  if (n <= 1) return {std::nullopt, true};
  const std::vector<Mat> mats = generator_matrices(m);
  std::vector<Mat> trans;
  for (const auto& a : mats) trans.push_back(transpose(a));
  std::mt19937_64 rng(seed);
  auto proper = [n](const Subspace& s) { return s.dim() > 0 && s.dim() < n; };

  for (std::size_t k = 0; k < opt.vector_attempts; ++k) {
    Vec v(n);
    for (auto& x : v) x = F.random(Level::Quadratic, rng);
    if (is_zero_vec(v)) continue;
    Subspace s = spin_matrices(F, n, {v}, mats);
    if (proper(s)) return {s, false};
  }

  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  for (std::size_t k = 0; k < opt.algebra_attempts; ++k) {
    Mat a(n, n, Level::Quartic);
    for (const auto& g : mats) a = add(F, a, scale(F, g, F.random(Level::Quadratic, rng)));
    const Mat word = multiply(F, mats[pick(rng)], mats[pick(rng)]);
    a = add(F, a, scale(F, word, F.random_nonzero(Level::Quadratic, rng)));
    const Vec poly = charpoly(F, a);
    for (Elem lambda : poly_roots(F, poly)) {
      const Mat nmat = shift_diagonal(F, a, lambda);
      const Subspace ker = kernel_basis(F, nmat);
      Subspace s = spin_matrices(F, n, {ker.vector(0)}, mats);
      if (proper(s)) return {s, false};
      const Subspace kert = kernel_basis(F, transpose(nmat));
      const Subspace st = spin_matrices(F, n, {kert.vector(0)}, trans);
      if (proper(st)) return {kernel_basis(F, st.basis()), false};
      if (ker.dim() == 1) return {std::nullopt, true};
    }
  }
  return {std::nullopt, false};
}

inline std::optional<Subspace> find_proper_submodule(const GModule& m, std::uint64_t seed, std::size_t attempts = 20) {
  MeataxeOptions opt;
  opt.vector_attempts = attempts;
  opt.algebra_attempts = std::max<std::size_t>(1, attempts / 2);
  return split_module(m, seed, opt).sub;
}

// ---------------------------------------------------------------------------
// Endomorphisms

/// dim of {X : X A = A X for every generator}, by solving for all n^2 entries.
inline std::size_t endomorphism_dim_direct(const FieldTower& F, const std::vector<Mat>& mats, std::size_t n) {
  Mat eqs(0, n * n, Level::Quartic);
  for (const auto& a : mats)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (X A - A X)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
        Vec row(n * n);
        for (std::size_t k = 0; k < n; ++k) {
          row[i * n + k] = F.add(row[i * n + k], a(k, j));
          row[k * n + j] = F.sub(row[k * n + j], a(i, k));
        }
        eqs.append_row(row);
      }
  return n * n - rank(F, eqs);
}

/// With v cyclic and spin basis b_j = W_j v, an endomorphism is fixed by w = X v
/// through X b_j = W_j w; commuting with A_g gives linear conditions on w.
inline std::optional<std::size_t> endomorphism_dim_cyclic(const FieldTower& F, const std::vector<Mat>& mats,
                                                          std::size_t n, const Vec& v) {
  EchelonBuilder eb(n);
  std::vector<Mat> words;
  std::vector<Vec> basis;
  if (!eb.insert(F, v)) return std::nullopt;
  words.push_back(Mat::identity(n, Level::Quartic));
  basis.push_back(v);
  for (std::size_t k = 0; k < words.size() && words.size() < n; ++k)
    for (const auto& a : mats) {
      Vec w = apply(F, a, basis[k]);
      if (eb.insert(F, w)) {
        words.push_back(multiply(F, a, words[k]));
        basis.push_back(std::move(w));
        if (words.size() == n) break;
      }
    }
  if (words.size() < n) return std::nullopt;
  Mat bmat(n, n, Level::Quartic);
  for (std::size_t j = 0; j < n; ++j) bmat.set_column(j, basis[j]);
  const Mat binv = inverse(F, bmat);
  Mat eqs(0, n, Level::Quartic);
  for (const auto& a : mats) {
    const Mat coeffs = multiply(F, binv, multiply(F, a, bmat));  // column k: A b_k in the basis
    for (std::size_t k = 0; k < n; ++k) {
      Mat block = scale(F, multiply(F, a, words[k]), F.neg(F.one()));
      for (std::size_t j = 0; j < n; ++j)
        if (!coeffs(j, k).is_zero()) block = add(F, block, scale(F, words[j], coeffs(j, k)));
      for (std::size_t i = 0; i < n; ++i) eqs.append_row(block.row(i));
    }
  }
  return n - rank(F, eqs);
}

inline std::size_t endomorphism_dim(const GModule& m, std::uint64_t seed = 1) {
  const FieldTower& F = m.field();
  const std::size_t n = m.dim();
  if (n == 0) return 0;
  const std::vector<Mat> mats = generator_matrices(m);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec v(n);
    for (auto& x : v) x = F.random(Level::Quadratic, rng);
    if (auto d = endomorphism_dim_cyclic(F, mats, n, v)) return *d;
  }
  return endomorphism_dim_direct(F, mats, n);
}

// ---------------------------------------------------------------------------
// Identification

/// det(xI - A) for the multiset of eigenvalues g0^k.
inline Vec poly_from_character(const FieldTower& F, const BrauerVector& chi) {
  Vec poly{F.one()};
  for (auto [k, mult] : chi.support())
    for (std::uint16_t i = 0; i < mult; ++i) {
      const Elem root = F.exp(k);
      Vec next(poly.size() + 1);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] = F.add(next[j + 1], poly[j]);
        next[j] = F.sub(next[j], F.mul(root, poly[j]));
      }
      poly = std::move(next);
    }
  return poly;
}

/// Character equality by characteristic polynomials; valid because the class
/// representatives act semisimply.
inline bool character_matches(const GModule& m, const ClassRep& c, const BrauerVector& expected) {
  const FieldTower& F = m.field();
  if (expected.total() != m.dim()) return false;
  if (m.dim() == 0) return true;
  return charpoly(F, lift(m.action(c.rep), Level::Quartic)) == poly_from_character(F, expected);
}

struct FactorFingerprint {
  std::size_t dim = 0;
  std::vector<BrauerVector> panel;
  std::optional<WeightLabel> label;
};

/// All weight labels of the given dimension.
inline std::vector<WeightLabel> labels_of_dim(int p, std::size_t dim) {
  std::vector<WeightLabel> out;
  for (int r = 0; r < p; ++r)
    for (int s = 0; s < p; ++s)
      if (static_cast<std::size_t>((r + 1) * (s + 1)) == dim)
        for (int e = 0; e < p * p - 1; ++e) out.push_back({r, s, e});
  return out;
}

struct Identifier {
  TowerPtr tower;
  std::vector<ClassRep> classes;
  std::vector<std::size_t> panel;
  std::size_t threads = 1;

  explicit Identifier(TowerPtr t, std::size_t threads_ = 1)
      : tower(std::move(t)), classes(p_regular_classes(*tower)), panel(class_panel(classes)), threads(threads_) {}

  FactorFingerprint fingerprint(const GModule& m) const {
    FactorFingerprint fp;
    fp.dim = m.dim();
    fp.panel.resize(panel.size());
    parallel_for(panel.size(), threads, [&](std::size_t i) { fp.panel[i] = module_character(m, classes[panel[i]]); });
    const FieldTower& F = *tower;
    for (const auto& label : labels_of_dim(F.p(), fp.dim)) {
      bool ok = true;
      for (std::size_t i = 0; i < panel.size() && ok; ++i)
        ok = weight_character(F, label, classes[panel[i]]) == fp.panel[i];
      if (!ok) continue;
      std::vector<char> match(classes.size(), 0);
      parallel_for(classes.size(), threads, [&](std::size_t i) {
        match[i] = character_matches(m, classes[i], weight_character(F, label, classes[i]));
      });
      if (std::all_of(match.begin(), match.end(), [](char c) { return c != 0; })) {
        fp.label = label;
        break;
      }
    }
    return fp;
  }
};

struct CompositionResult {
  std::vector<FactorFingerprint> factors;  // sorted by label

  ConstituentList labels() const {
    ConstituentList out;
    for (const auto& f : factors)
      if (f.label) out.push_back(*f.label);
    return sorted(out);
  }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& f : factors) n += f.dim;
    return n;
  }
};

namespace detail {

inline void composition_rec(const ModulePtr& m, std::uint64_t seed, const MeataxeOptions& opt, const Identifier& id,
                            std::vector<FactorFingerprint>& out) {
  if (m->dim() == 0) return;
  const SplitResult split = split_module(*m, seed, opt);
  if (split.sub) {
    const SubmoduleData sub = submodule(m, *split.sub);
    const QuotientData quo = quotient(m, *split.sub);
    composition_rec(sub.module, splitmix64(seed + 1), opt, id, out);
    composition_rec(quo.module, splitmix64(seed + 2), opt, id, out);
    return;
  }
  FactorFingerprint fp = id.fingerprint(*m);
  if (!fp.label)
    throw Error(ErrorCode::UnidentifiedFactor, "factor of dimension " + std::to_string(m->dim()) + " in " +
                                                   m->descriptor() + " matches no weight");
  if (!split.irreducible && endomorphism_dim(*m, seed) != 1)
    throw Error(ErrorCode::UnidentifiedFactor, "unsplit factor of " + m->descriptor() + " is not irreducible");
  out.push_back(std::move(fp));
}

}  // namespace detail

inline CompositionResult composition_factors(const ModulePtr& m, std::uint64_t seed, const Identifier& id,
                                             const MeataxeOptions& opt = {}) {
  CompositionResult res;
  detail::composition_rec(m, seed, opt, id, res.factors);
  std::sort(res.factors.begin(), res.factors.end(),
            [](const FactorFingerprint& a, const FactorFingerprint& b) { return a.label < b.label; });
  if (res.total_dim() != m->dim()) throw Error(ErrorCode::InternalMismatch, "factor dimensions do not add up");
  return res;
}

inline CompositionResult composition_factors(const ModulePtr& m, std::uint64_t seed, const MeataxeOptions& opt = {}) {
  Identifier id(m->tower(), opt.threads);
  return composition_factors(m, seed, id, opt);
}

}  // namespace weightred
