#pragma once

// Dense exact linear algebra over any level of the field tower.
//
// Matrices act on column vectors. A Subspace is stored by its reduced row
// echelon basis, which is canonical, so equality of subspaces is equality of
// basis matrices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "weightred/gf.hpp"

namespace weightred {

using Vec = std::vector<Elem>;

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, Level level = Level::Quadratic)
      : rows_(rows), cols_(cols), level_(level), data_(rows * cols) {}

  static Mat identity(std::size_t n, Level level = Level::Quadratic) {
    Mat m(n, n, level);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Level level() const noexcept { return level_; }
  void set_level(Level l) noexcept { level_ = l; }

  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  Vec column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, std::span<const Elem> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }
  void append_row(std::span<const Elem> v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  const std::vector<Elem>& data() const noexcept { return data_; }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e.is_zero(); });
  }

  /// Entry equality; the level tag is bookkeeping and does not take part.
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Level level_ = Level::Quadratic;
  std::vector<Elem> data_;
};

inline Level max_level(Level a, Level b) { return a < b ? b : a; }

/// Smallest level containing every entry.
inline Level entry_level(const FieldTower& F, std::span<const Elem> v) {
  Level l = Level::Base;
  for (Elem e : v) l = max_level(l, F.level_of(e));
  return l;
}

inline void check_level(const FieldTower& F, const Mat& m) {
  for (Elem e : m.data())
    if (!F.valid(e) || !F.in_level(e, m.level()))
      throw Error(ErrorCode::LevelMismatch,
                  "entry outside declared level " + std::string(to_string(m.level())));
}

/// Re-tag at a higher level; entries are unchanged since embeddings are the
/// identity on codes.
inline Mat lift(const Mat& m, Level l) {
  if (l < m.level()) throw Error(ErrorCode::LevelMismatch, "cannot lift to a lower level");
  Mat out = m;
  out.set_level(l);
  return out;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows(), a.level());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// dst += a * src
inline void row_axpy(const FieldTower& F, std::span<Elem> dst, std::span<const Elem> src, Elem a) {
  if (a.is_zero()) return;
  for (std::size_t k = 0; k < dst.size(); ++k)
    if (!src[k].is_zero()) dst[k] = F.add(dst[k], F.mul(a, src[k]));
}

inline Mat multiply(const FieldTower& F, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::AmbientMismatch, "matrix product shape mismatch");
  Mat c(a.rows(), b.cols(), max_level(a.level(), b.level()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) row_axpy(F, c.row(i), b.row(k), a(i, k));
  return c;
}

inline Mat add(const FieldTower& F, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::AmbientMismatch, "shape mismatch");
  Mat c(a.rows(), a.cols(), max_level(a.level(), b.level()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

inline Mat scale(const FieldTower& F, const Mat& a, Elem s) {
  Mat c(a.rows(), a.cols(), max_level(a.level(), F.level_of(s)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.mul(s, a(i, j));
  return c;
}

/// M - lambda * I
inline Mat shift_diagonal(const FieldTower& F, const Mat& m, Elem lambda) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "shift of non-square matrix");
  Mat out = m;
  out.set_level(max_level(m.level(), F.level_of(lambda)));
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) = F.sub(out(i, i), lambda);
  return out;
}

inline Vec apply(const FieldTower& F, const Mat& a, std::span<const Elem> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::AmbientMismatch, "matrix-vector shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc{0};
    const auto r = a.row(i);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero() && !r[k].is_zero()) acc = F.add(acc, F.mul(r[k], v[k]));
    out[i] = acc;
  }
  return out;
}

inline bool is_zero_vec(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.is_zero(); });
}

struct RrefResult {
  Mat reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// In-place reduction to reduced row echelon form; zero rows are dropped.
inline RrefResult rref_unchecked(const FieldTower& F, Mat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(r, k));
    const Elem inv = F.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(inv, m(r, k));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      row_axpy(F, m.row(i), m.row(r), F.neg(m(i, c)));
    }
    pivots.push_back(c);
    ++r;
  }
  Mat reduced(r, m.cols(), m.level());
  for (std::size_t i = 0; i < r; ++i) std::copy(m.row(i).begin(), m.row(i).end(), reduced.row(i).begin());
  return {std::move(reduced), r, std::move(pivots)};
}

inline RrefResult rref(const FieldTower& F, const Mat& m) {
  check_level(F, m);
  return rref_unchecked(F, m);
}

inline std::size_t rank(const FieldTower& F, const Mat& m) { return rref_unchecked(F, m).rank; }

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient, Level level = Level::Quadratic) : ambient_(ambient), basis_(0, ambient, level) {}

  /// Row span of `rows`.
  static Subspace span(const FieldTower& F, const Mat& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    auto res = rref_unchecked(F, rows);
    s.basis_ = std::move(res.reduced);
    s.pivots_ = std::move(res.pivots);
    return s;
  }
  static Subspace span(const FieldTower& F, std::size_t ambient, const std::vector<Vec>& vectors,
                       Level level = Level::Quadratic) {
    Mat rows(0, ambient, level);
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw Error(ErrorCode::AmbientMismatch, "vector length");
      rows.append_row(v);
    }
    rows.set_level(max_level(level, entry_level(F, rows.data())));
    return span(F, rows);
  }
  static Subspace full(std::size_t ambient, Level level = Level::Quadratic) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat::identity(ambient, level);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Mat& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Level level() const noexcept { return basis_.level(); }
  Vec vector(std::size_t i) const { return Vec(basis_.row(i).begin(), basis_.row(i).end()); }

  /// v minus its projection along the pivot coordinates; zero iff v lies in the span.
  Vec reduce(const FieldTower& F, std::span<const Elem> v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::AmbientMismatch, "vector length");
    Vec out(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const Elem c = out[pivots_[i]];
      if (!c.is_zero()) row_axpy(F, out, basis_.row(i), F.neg(c));
    }
    return out;
  }
  bool contains(const FieldTower& F, std::span<const Elem> v) const { return is_zero_vec(reduce(F, v)); }
  bool contains(const FieldTower& F, const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(F, other.basis_.row(i))) return false;
    return true;
  }
  /// Coordinates in the echelon basis of a vector known to lie in the span.
  Vec coordinates(std::span<const Elem> v) const {
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {v : M v = 0} inside F^{cols}.
inline Subspace kernel_basis(const FieldTower& F, const Mat& m) {
  check_level(F, m);
  auto res = rref_unchecked(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  Mat rows(0, m.cols(), m.level());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Elem{1};
    for (std::size_t i = 0; i < res.pivots.size(); ++i) v[res.pivots[i]] = F.neg(res.reduced(i, f));
    rows.append_row(v);
  }
  if (rows.rows() == 0) return Subspace(m.cols(), m.level());
  return Subspace::span(F, rows);
}

/// Some x with M x = b, or nullopt.
inline std::optional<Vec> solve(const FieldTower& F, const Mat& m, std::span<const Elem> b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::AmbientMismatch, "rhs length");
  Mat aug(m.rows(), m.cols() + 1, max_level(m.level(), entry_level(F, b)));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto res = rref_unchecked(F, aug);
  if (!res.pivots.empty() && res.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t i = 0; i < res.pivots.size(); ++i) x[res.pivots[i]] = res.reduced(i, m.cols());
  return x;
}

inline std::size_t eigenspace_dim(const FieldTower& F, const Mat& m, Elem lambda) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "eigenspace of non-square matrix");
  return m.cols() - rank(F, shift_diagonal(F, m, lambda));
}

inline Subspace sum(const FieldTower& F, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::AmbientMismatch, "sum of subspaces");
  Mat rows(0, a.ambient(), max_level(a.level(), b.level()));
  for (std::size_t i = 0; i < a.dim(); ++i) rows.append_row(a.basis().row(i));
  for (std::size_t i = 0; i < b.dim(); ++i) rows.append_row(b.basis().row(i));
  if (rows.rows() == 0) return Subspace(a.ambient(), rows.level());
  return Subspace::span(F, rows);
}

/// Zassenhaus: reduce [[A, A], [B, 0]]; rows whose left half vanishes span A ∩ B.
inline Subspace intersect(const FieldTower& F, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::AmbientMismatch, "intersection of subspaces");
  const std::size_t n = a.ambient();
  const Level lvl = max_level(a.level(), b.level());
  Mat z(a.dim() + b.dim(), 2 * n, lvl);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = a.basis()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = b.basis()(i, j);
  auto res = rref_unchecked(F, z);
  Mat rows(0, n, lvl);
  for (std::size_t i = 0; i < res.rank; ++i) {
    if (res.pivots[i] < n) continue;
    rows.append_row(res.reduced.row(i).subspan(n, n));
  }
  if (rows.rows() == 0) return Subspace(n, lvl);
  return Subspace::span(F, rows);
}

/// Complement coordinates of S: the non-pivot columns of its echelon basis.
inline std::vector<std::size_t> complement_coordinates(const Subspace& s) {
  std::vector<bool> is_pivot(s.ambient(), false);
  for (auto c : s.pivots()) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.ambient(); ++i)
    if (!is_pivot[i]) out.push_back(i);
  return out;
}

/// Linear map F^n -> F^{n - dim S}, surjective with kernel exactly S.
inline Mat quotient_map(const FieldTower& F, const Subspace& s) {
  const auto comp = complement_coordinates(s);
  Mat q(comp.size(), s.ambient(), s.level());
  for (std::size_t j = 0; j < s.ambient(); ++j) {
    Vec e(s.ambient());
    e[j] = Elem{1};
    const Vec r = s.reduce(F, e);
    for (std::size_t i = 0; i < comp.size(); ++i) q(i, j) = r[comp[i]];
  }
  return q;
}

/// Column space of a matrix.
inline Subspace image(const FieldTower& F, const Mat& m) {
  if (m.cols() == 0) return Subspace(m.rows(), m.level());
  return Subspace::span(F, transpose(m));
}

/// Characteristic polynomial det(xI - M), coefficients from low to high
/// degree; Hessenberg reduction followed by the standard recurrence.
inline Vec charpoly(const FieldTower& F, const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "charpoly of non-square matrix");
  const std::size_t n = m.rows();
  Mat h = m;
  for (std::size_t col = 0; col + 2 < n; ++col) {
    std::size_t piv = col + 1;
    while (piv < n && h(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      for (std::size_t k = 0; k < n; ++k) std::swap(h(piv, k), h(col + 1, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(h(k, piv), h(k, col + 1));
    }
    const Elem inv = F.inv(h(col + 1, col));
    for (std::size_t j = col + 2; j < n; ++j) {
      const Elem u = F.mul(h(j, col), inv);
      if (u.is_zero()) continue;
      // row_j -= u row_{col+1}; column_{col+1} += u column_j
      row_axpy(F, h.row(j), h.row(col + 1), F.neg(u));
      for (std::size_t k = 0; k < n; ++k)
        if (!h(k, j).is_zero()) h(k, col + 1) = F.add(h(k, col + 1), F.mul(u, h(k, j)));
    }
  }
  std::vector<Vec> polys(n + 1);
  polys[0] = Vec{Elem{1}};
  for (std::size_t mm = 1; mm <= n; ++mm) {
    // p_m = (x - h_{m,m}) p_{m-1} - sum_i t_i h_{m-i,m} p_{m-i-1}, 1-based indices
    const Vec& prev = polys[mm - 1];
    Vec cur(mm + 1);
    const Elem diag = h(mm - 1, mm - 1);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      cur[k + 1] = F.add(cur[k + 1], prev[k]);
      cur[k] = F.sub(cur[k], F.mul(diag, prev[k]));
    }
    Elem t{1};
    for (std::size_t i = 1; i < mm; ++i) {
      t = F.mul(t, h(mm - i, mm - i - 1));
      if (t.is_zero()) break;
      const Elem coef = F.mul(t, h(mm - i - 1, mm - 1));
      if (coef.is_zero()) continue;
      const Vec& low = polys[mm - i - 1];
      for (std::size_t k = 0; k < low.size(); ++k) cur[k] = F.sub(cur[k], F.mul(coef, low[k]));
    }
    polys[mm] = std::move(cur);
  }
  return polys[n];
}

/// Semi-echelon basis grown one vector at a time. Each stored row has a unit
/// pivot and vanishes at the pivots of earlier rows.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient) : ambient_(ambient) {}

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient() const noexcept { return ambient_; }
  const std::vector<Vec>& rows() const noexcept { return rows_; }

  Vec reduce(const FieldTower& F, std::span<const Elem> v) const {
    Vec out(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Elem c = out[pivots_[i]];
      if (!c.is_zero()) row_axpy(F, out, rows_[i], F.neg(c));
    }
    return out;
  }

  /// Adds v if it is new; returns the normalized reduced vector in that case.
  std::optional<Vec> insert(const FieldTower& F, std::span<const Elem> v) {
    if (v.size() != ambient_) throw Error(ErrorCode::AmbientMismatch, "vector length");
    Vec r = reduce(F, v);
    std::size_t piv = 0;
    while (piv < r.size() && r[piv].is_zero()) ++piv;
    if (piv == r.size()) return std::nullopt;
    const Elem inv = F.inv(r[piv]);
    for (auto& x : r) x = F.mul(x, inv);
    rows_.push_back(r);
    pivots_.push_back(piv);
    return r;
  }

  Subspace subspace(const FieldTower& F, Level level = Level::Quadratic) const {
    return Subspace::span(F, ambient_, rows_, level);
  }

 private:
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline Elem poly_eval(const FieldTower& F, std::span<const Elem> poly, Elem x) {
  Elem acc{0};
  for (std::size_t k = poly.size(); k-- > 0;) acc = F.add(F.mul(acc, x), poly[k]);
  return acc;
}

/// Quotient of poly by (x - root); the remainder is discarded.
inline Vec poly_deflate(const FieldTower& F, std::span<const Elem> poly, Elem root) {
  if (poly.size() <= 1) return {};
  Vec out(poly.size() - 1);
  Elem carry{0};
  for (std::size_t k = poly.size(); k-- > 1;) {
    carry = F.add(poly[k], F.mul(carry, root));
    out[k - 1] = carry;
  }
  return out;
}

}  // namespace weightred
