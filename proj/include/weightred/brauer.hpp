#pragma once

// Brauer characters of GL_2(F_q) as exponent-multiplicity vectors over a fixed
// primitive (q^2-1)-th root of unity g0, and Diamond's constituent formula.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "weightred/modrep.hpp"
#include "weightred/parallel.hpp"

namespace weightred {

enum class ClassKind { Central, Split, Nonsplit };

constexpr std::string_view to_string(ClassKind k) {
  switch (k) {
    case ClassKind::Central: return "central";
    case ClassKind::Split: return "split";
    case ClassKind::Nonsplit: return "nonsplit";
  }
  return "?";
}

struct ClassRep {
  ClassKind kind = ClassKind::Central;
  Elem alpha, beta;
  std::uint32_t log_alpha = 0, log_beta = 0;  // exponents base g0
  GrpElem rep;

  std::string describe() const {
    return std::string(to_string(kind)) + "(" + std::to_string(log_alpha) + "," + std::to_string(log_beta) + ")";
  }
};

/// One representative per p-regular class: central aI, split diag(a, b) with
/// dlog a < dlog b, and the companion matrix [[0, -N], [1, Tr]] of the element
/// of smallest code in each Frobenius orbit of F_{q^2} \ F_q.
inline std::vector<ClassRep> p_regular_classes(const FieldTower& F) {
  std::vector<ClassRep> out;
  const int q = F.q();
  const std::uint32_t step = static_cast<std::uint32_t>(q) + 1;  // F_q^* = <g0^{q+1}>
  for (int k = 0; k <= q - 2; ++k) {
    const Elem a = F.exp(static_cast<std::uint64_t>(k) * step);
    out.push_back({ClassKind::Central, a, a, k * step, k * step, grp_diag(a, a)});
  }
  for (int k1 = 0; k1 <= q - 2; ++k1)
    for (int k2 = k1 + 1; k2 <= q - 2; ++k2) {
      const Elem a = F.exp(static_cast<std::uint64_t>(k1) * step), b = F.exp(static_cast<std::uint64_t>(k2) * step);
      out.push_back({ClassKind::Split, a, b, k1 * step, k2 * step, grp_diag(a, b)});
    }
  for (Elem x : F.elements(Level::Quartic)) {
    if (F.in_level(x, Level::Quadratic)) continue;
    const Elem xq = F.pow(x, static_cast<std::uint64_t>(q));
    if (xq.code < x.code) continue;
    const Elem norm = F.mul(x, xq), trace = F.add(x, xq);
    out.push_back({ClassKind::Nonsplit, x, xq, F.dlog(x), F.dlog(xq), {F.zero(), F.neg(norm), F.one(), trace}});
  }
  return out;
}

inline std::size_t expected_class_count(const FieldTower& F) {
  const std::size_t q = static_cast<std::size_t>(F.q());
  return q * (q - 1);
}

/// Indices of the fingerprint panel: all central classes, 8 evenly spaced split and 8 nonsplit ones.
inline std::vector<std::size_t> class_panel(const std::vector<ClassRep>& classes, std::size_t per_kind = 8) {
  std::vector<std::size_t> central, split, nonsplit, out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    switch (classes[i].kind) {
      case ClassKind::Central: central.push_back(i); break;
      case ClassKind::Split: split.push_back(i); break;
      case ClassKind::Nonsplit: nonsplit.push_back(i); break;
    }
  }
  out = central;
  for (const auto* v : {&split, &nonsplit}) {
    const std::size_t n = std::min(per_kind, v->size());
    for (std::size_t j = 0; j < n; ++j) out.push_back((*v)[j * v->size() / n]);
  }
  return out;
}

/// Multiplicity of g0^k among the eigenvalues, k in [0, q^2 - 1).
class BrauerVector {
 public:
  BrauerVector() = default;
  explicit BrauerVector(std::size_t modulus) : counts_(modulus, 0) {}

  std::size_t modulus() const noexcept { return counts_.size(); }
  std::uint16_t operator[](std::size_t k) const { return counts_[k]; }
  void add(std::uint64_t k, std::uint16_t mult = 1) { counts_[k % counts_.size()] += mult; }
  std::size_t total() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

  BrauerVector& operator+=(const BrauerVector& o) {
    if (counts_.empty()) counts_.assign(o.counts_.size(), 0);
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += o.counts_[k];
    return *this;
  }

  /// (exponent, multiplicity) pairs with nonzero multiplicity.
  std::vector<std::pair<std::size_t, std::uint16_t>> support() const {
    std::vector<std::pair<std::size_t, std::uint16_t>> out;
    for (std::size_t k = 0; k < counts_.size(); ++k)
      if (counts_[k]) out.emplace_back(k, counts_[k]);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (auto [k, m] : support()) s += (s.size() > 1 ? "," : "") + std::to_string(k) + ":" + std::to_string(m);
    return s + "}";
  }

  friend bool operator==(const BrauerVector&, const BrauerVector&) = default;

 private:
  std::vector<std::uint16_t> counts_;
};

/// Closed form: X^i Y^{r-i} (x) X^{i'} Y^{s-i'} has eigenvalue
/// alpha^{i + p i'} beta^{(r-i) + p (s-i')} (alpha beta)^e.
inline BrauerVector weight_character(const FieldTower& F, const WeightLabel& label, const ClassRep& c) {
  const std::uint64_t n = F.unit_order();
  BrauerVector v(n);
  if (label.is_zero()) return v;
  const std::uint64_t p = static_cast<std::uint64_t>(F.p());
  const std::uint64_t la = c.log_alpha, lb = c.log_beta;
  const std::uint64_t twist = (la + lb) * static_cast<std::uint64_t>(label.e) % n;
  for (int i = 0; i <= label.r; ++i)
    for (int ip = 0; ip <= label.s; ++ip) {
      const std::uint64_t ea = static_cast<std::uint64_t>(i) + p * static_cast<std::uint64_t>(ip);
      const std::uint64_t eb =
          static_cast<std::uint64_t>(label.r - i) + p * static_cast<std::uint64_t>(label.s - ip);
      v.add((la * ea + lb * eb + twist) % n);
    }
  return v;
}

inline BrauerVector weights_character(const FieldTower& F, const std::vector<WeightLabel>& labels,
                                      const ClassRep& c) {
  BrauerVector v(F.unit_order());
  for (const auto& l : labels) v += weight_character(F, l, c);
  return v;
}

/// Eigenvalue count of the action matrix of the class representative, read off
/// the characteristic polynomial. Candidates are the m-th roots of unity, m the
/// order of the representative; repeated roots are checked against the
/// eigenspace dimension.
inline BrauerVector module_character(const GModule& m, const ClassRep& c) {
  const FieldTower& F = m.field();
  const std::uint64_t n = F.unit_order();
  BrauerVector out(n);
  if (m.dim() == 0) return out;
  Mat a = lift(m.action(c.rep), Level::Quartic);
  Vec poly = charpoly(F, a);
  const std::uint64_t oa = F.element_order(c.alpha), ob = F.element_order(c.beta);
  const std::uint64_t order = std::lcm(oa, ob);
  const std::uint64_t stride = n / order;
  std::size_t found = 0;
  auto take_root = [&](std::uint64_t k) {
    const Elem root = F.exp(k);
    std::uint16_t mult = 0;
    while (poly.size() > 1 && poly_eval(F, poly, root).is_zero()) {
      poly = poly_deflate(F, poly, root);
      ++mult;
    }
    if (mult == 0) return;
    if (mult > 1 && eigenspace_dim(F, a, root) != mult)
      throw Error(ErrorCode::IncompleteEigenbasis, "class " + c.describe() + " is not diagonalizable");
    out.add(k, mult);
    found += mult;
  };
  for (std::uint64_t j = 0; j < order && poly.size() > 1; ++j) take_root(j * stride);
  for (std::uint64_t k = 0; k < n && poly.size() > 1; ++k)
    if (k % stride != 0) take_root(k);
  if (found != m.dim())
    throw Error(ErrorCode::IncompleteEigenbasis,
                "class " + c.describe() + ": found " + std::to_string(found) + " of " + std::to_string(m.dim()) +
                    " eigenvalues");
  return out;
}

inline std::vector<BrauerVector> module_characters(const GModule& m, const std::vector<ClassRep>& classes,
                                                   std::size_t threads = 1) {
  std::vector<BrauerVector> out(classes.size());
  parallel_for(classes.size(), threads, [&](std::size_t i) { out[i] = module_character(m, classes[i]); });
  return out;
}

// ---------------------------------------------------------------------------
// Diamond's constituents

using ConstituentList = std::vector<WeightLabel>;

inline ConstituentList sorted(ConstituentList v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// R_{m,n} = (x)_sigma Sym^{n_sigma - 1}^sigma (x) det^{m_sigma sigma} for E = {id, tau},
/// indexed so that sigma o Frob is the next embedding. Empty if some n_sigma = 0.
inline std::optional<WeightLabel> r_label(int p, const std::array<int, 2>& m, const std::array<int, 2>& n,
                                          std::int64_t e) {
  if (n[0] <= 0 || n[1] <= 0) return std::nullopt;
  if (n[0] > p || n[1] > p) throw Error(ErrorCode::InternalMismatch, "n_J out of range");
  return WeightLabel::twist(p, n[0] - 1, n[1] - 1, m[0] + static_cast<std::int64_t>(p) * m[1] + e);
}

/// The J-rule over subsets J of E, with delta_J the indicator of J o Frob.
inline ConstituentList diamond_j_rule(int p, int r, int s, std::int64_t e) {
  constexpr std::size_t E = 2;
  const std::array<int, E> a = {r, s};
  ConstituentList out;
  for (unsigned mask = 0; mask < (1u << E); ++mask) {
    auto in_j = [mask](std::size_t sigma) { return (mask >> sigma) & 1u; };
    // sigma lies in J^(p) iff sigma = tau o Frob for some tau in J, i.e. tau = sigma - 1
    auto delta = [&](std::size_t sigma) { return static_cast<int>(in_j((sigma + E - 1) % E)); };
    std::array<int, E> m{}, n{};
    for (std::size_t sigma = 0; sigma < E; ++sigma) {
      const int x = a[sigma] + delta(sigma);
      if (in_j(sigma)) {
        m[sigma] = 0;
        n[sigma] = x;
      } else {
        m[sigma] = x;
        n[sigma] = p - x;
      }
    }
    if (auto lab = r_label(p, m, n, e)) out.push_back(*lab);
  }
  return sorted(out);
}

/// The four-term display, Sym^{-1} terms dropped.
inline ConstituentList diamond_display(int p, int r, int s, std::int64_t e) {
  ConstituentList out;
  auto push = [&](int rr, int ss, std::int64_t l, std::int64_t t) {
    if (rr < 0 || ss < 0) return;
    out.push_back(WeightLabel::twist(p, rr, ss, l + static_cast<std::int64_t>(p) * t + e));
  };
  push(r, s, 0, 0);
  push(p - r - 1, p - 1 - s, r, s);
  push(r - 1, p - 2 - s, 0, s + 1);
  push(p - r - 2, s - 1, r + 1, 0);
  return sorted(out);
}

/// Constituents of U^e_{r+ps}; throws InternalMismatch if the J-rule and the display disagree.
inline ConstituentList diamond_constituents(int p, int r, int s, std::int64_t e) {
  if (r < 0 || s < 0 || r > p - 1 || s > p - 1)
    throw Error(ErrorCode::WeightOutOfRange, "constituents need 0 <= r, s <= p-1");
  ConstituentList rule = diamond_j_rule(p, r, s, e);
  if (rule != diamond_display(p, r, s, e))
    throw Error(ErrorCode::InternalMismatch, "J-rule and display disagree at (r,s,e) = (" + std::to_string(r) + "," +
                                                 std::to_string(s) + "," + std::to_string(e) + ")");
  return rule;
}

inline std::pair<int, int> degree_digits(int p, std::int64_t d) {
  return {static_cast<int>(d % p), static_cast<int>(d / p)};
}

inline std::size_t total_dim(const ConstituentList& l) {
  std::size_t n = 0;
  for (const auto& w : l) n += static_cast<std::size_t>(w.dim());
  return n;
}

/// Constituents of W^{l,t}_{r,s} = U / V^{l,t}_{r,s}.
inline ConstituentList w_constituents(int p, int r, int s, std::int64_t e) {
  ConstituentList all = diamond_constituents(p, r, s, e);
  const WeightLabel v = WeightLabel::twist(p, r, s, e);
  auto it = std::find(all.begin(), all.end(), v);
  if (it == all.end()) throw Error(ErrorCode::InternalMismatch, "V is not a constituent of U");
  all.erase(it);
  return all;
}

struct SsReport {
  int d = 0, e = 0;
  ConstituentList constituents;
  std::size_t classes_checked = 0;
  bool ok = false;
  std::optional<std::string> failing_class;
};

/// Compares the character of U^e_d with the summed constituent characters on every class.
inline SsReport verify_ss(const TowerPtr& tower, std::int64_t d, std::int64_t e, const std::vector<ClassRep>& classes,
                          std::size_t threads = 1, std::optional<ConstituentList> override_list = std::nullopt) {
  const FieldTower& F = *tower;
  check_degree(F, d);
  const int p = F.p();
  const auto [r, s] = degree_digits(p, d);
  SsReport rep;
  rep.d = static_cast<int>(d);
  rep.e = mod_floor(e, F.q() - 1);
  rep.constituents = override_list ? *override_list : diamond_constituents(p, r, s, e);
  const auto u = induced_module(tower, d, e);
  std::vector<char> match(classes.size(), 0);
  parallel_for(classes.size(), threads, [&](std::size_t i) {
    match[i] = module_character(*u, classes[i]) == weights_character(F, rep.constituents, classes[i]);
  });
  rep.classes_checked = classes.size();
  rep.ok = true;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!match[i]) {
      rep.ok = false;
      rep.failing_class = classes[i].describe();
      break;
    }
  return rep;
}

}  // namespace weightred
