// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "quad_oracle.hpp"
#include "weightred/cli/commands.hpp"

using namespace weightred;
using namespace weightred::cli;

namespace {

RunConfig config(int p, bool strict = false) {
  RunConfig cfg;
  cfg.p = p;
  cfg.strict = strict;
  return cfg;
}

/// Starts a report for a check that has no CLI subcommand of its own.
Report manual(const std::string& name, const Json& args, int p) {
  Report r;
  r.command = name;
  r.args = args;
  r.config = config(p).to_json();
  return r;
}

/// Appends all entries of `from` to `into`, prefixing their names.
void merge(Report& into, const Report& from, const std::string& prefix) {
  for (const auto& e : from.results) {
    Json fields = e;
    fields.erase("name");
    fields.erase("status");
    const std::string st = e["status"].get<std::string>();
    into.add(prefix + e["name"].get<std::string>(), st == "pass" ? Status::Pass : st == "fail" ? Status::Fail : Status::Skip,
             fields);
  }
  for (const auto& w : from.warnings) into.warnings.push_back(w);
}

Report criterion1() {
  RunConfig cfg = config(5);
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 0; d <= 23; ++d) ds.push_back(d);
  Report r = cmd_check_diamond(cfg, ds, {0, 1, 7, 23});
  std::size_t full = 0;
  for (const auto& e : r.results)
    if (e["classes"] == 600) ++full;
  r.add("cells_at_all_600_classes", status_of(full == 96 && r.results.size() == 96), Json{{"cells", full}});
  return r;
}

Report criterion2() {
  Report r = manual("composition-factors", Json::object(), 5);
  const std::vector<std::pair<int, std::vector<std::pair<std::int64_t, std::int64_t>>>> runs = {
      {5,
       [] {
         std::vector<std::pair<std::int64_t, std::int64_t>> v;
         for (std::int64_t d = 0; d <= 23; ++d) v.push_back({d, 0});
         return v;
       }()},
      {7, {{0, 0}, {1, 0}, {13, 5}, {17, 0}, {36, 0}, {36, 11}, {47, 0}, {22, 1}, {8, 47}, {40, 2}, {5, 7}, {30, 3}}}};
  for (const auto& [p, pairs] : runs) {
    const TowerPtr T = make_tower(p);
    const Identifier id(T, default_threads());
    for (auto [d, e] : pairs) {
      const auto [rr, ss] = degree_digits(p, d);
      const ConstituentList want = diamond_constituents(p, rr, ss, e);
      const ConstituentList got = composition_factors(induced_module(T, d, e), 1, id).labels();
      r.add("factors", status_of(got == want),
            Json{{"p", p}, {"d", d}, {"e", e}, {"factors", label_names(p, got)}, {"constituents", label_names(p, want)}});
    }
  }
  return r;
}

Report criterion3() {
  Report r = manual("dimensions", Json::object(), 7);
  for (int p : {3, 5, 7}) {
    const TowerPtr T = make_tower(p);
    const int q = p * p;
    bool all = true;
    for (std::int64_t d = 0; d <= q - 2; ++d)
      for (std::int64_t e : {std::int64_t{0}, std::int64_t{1}, std::int64_t{q - 2}})
        all = all && induced_module(T, d, e)->dim() == static_cast<std::size_t>(q + 1);
    r.add("dim_U", status_of(all), Json{{"p", p}, {"expected", q + 1}});
    const GradedSumReport g = graded_sum_check(T);
    r.add("graded_sum", status_of(g.ok && g.total == g.expected),
          Json{{"p", p}, {"total", g.total}, {"expected", g.expected}, {"rank", g.rank}, {"method", g.method}});
  }
  const int p = 7;
  std::size_t bad = 0, cells = 0;
  for (int rr = 0; rr < p; ++rr)
    for (int ss = 0; ss < p; ++ss)
      for (std::int64_t e = 0; e < p * p - 1; ++e, ++cells)
        if (total_dim(diamond_constituents(p, rr, ss, e)) != static_cast<std::size_t>(p * p + 1)) ++bad;
  r.add("constituent_dims", status_of(bad == 0), Json{{"p", p}, {"cells", cells}, {"mismatches", bad}});
  return r;
}

Report criterion4() {
  Report r = manual("model-isomorphism", Json::object(), 5);
  const std::vector<std::pair<int, std::vector<std::int64_t>>> runs = {
      {5,
       [] {
         std::vector<std::int64_t> v;
         for (std::int64_t d = 0; d <= 23; ++d) v.push_back(d);
         return v;
       }()},
      {7, {0, 1, 13, 36, 47}}};
  for (const auto& [p, ds] : runs) {
    const TowerPtr T = make_tower(p);
    const FieldTower& F = *T;
    const auto gens = group_generators(F, GroupSpec::gl());
    for (auto d : ds) {
      const Mat phi = iso_phi(F, d), psi = iso_psi(F, d);
      const std::size_t n = proj_count(F);
      const bool inverse = multiply(F, psi, phi) == Mat::identity(n) && multiply(F, phi, psi) == Mat::identity(n);
      const auto U = induced_module(T, d, 0);
      const auto B = borel_model(T, d, 0);
      bool equiv = true;
      for (const auto& g : gens) equiv = equiv && multiply(F, B->action(g), phi) == multiply(F, phi, U->action(g));
      r.add("phi_psi", status_of(inverse && equiv), Json{{"p", p}, {"d", d}, {"inverse", inverse}, {"equivariant", equiv}});
    }
  }
  return r;
}

Report criterion5() {
  Report r = manual("embedding", Json::object(), 5);
  for (int p : {5, 7}) {
    const TowerPtr T = make_tower(p);
    const auto gens = group_generators(*T, GroupSpec::gl());
    for (int rr = 0; rr < p; ++rr)
      for (int ss = 0; ss < p; ++ss) {
        const ModMap m = psi_embed(T, rr, ss, 0, 0);
        const bool rank = m.rank() == static_cast<std::size_t>((rr + 1) * (ss + 1));
        const bool equiv = is_equivariant(*m.source(), *m.target(), m.matrix(), gens);
        r.add("psi", status_of(rank && equiv), Json{{"p", p}, {"r", rr}, {"s", ss}, {"rank", m.rank()}, {"equivariant", equiv}});
      }
  }
  return r;
}

Report criterion6() {
  return cmd_invariants(config(7), {Lemma::Lem2, Lemma::Lem3, Lemma::Lem36, Lemma::Lem237}, {2, 4, 6}, true);
}

Report criterion7() {
  const RunConfig cfg = config(7, true);
  Report r = cmd_exceptional(cfg, ExceptionalCase::First, 0, 0);
  const TowerPtr T = make_tower(7, true);
  const ExceptionalData ex = monomial_submodule(T, 0, 0, ExceptionalCase::First, true);
  const ExceptionalFiltration fil = exceptional_filtration(ex);
  const bool dims = ex.monomials.dim() == 37 && fil.middle.module->dim() == 25 && fil.line.module->dim() == 1 &&
                    fil.w.quotient.module->dim() == 38 && fil.top.module->dim() == 12;
  const ExceptionalLabels labels = exceptional_labels(7, ExceptionalCase::First, 0, 0);
  r.add("shape", status_of(dims && labels.middle.to_string(7) == "V^{2,0}_{4,4}"),
        Json{{"M", ex.monomials.dim()}, {"M_over_V", fil.middle.module->dim()}, {"middle", labels.middle.to_string(7)}});
  return r;
}

Report criterion8() {
  Report r = manual("connecting", Json::object(), 5);
  for (int p : {5, 7}) {
    const TowerPtr T = make_tower(p);
    for (std::int64_t e : {std::int64_t{0}, static_cast<std::int64_t>(p) * p - 2}) {
      const ConnectingReport c = connecting_nullity_check(T, e);
      r.add("connecting", status_of(c.ok()), Json{{"p", p}, {"e", e}, {"h0_U", c.h0_u}, {"h0_W", c.h0_w}});
    }
  }
  return r;
}

Report criterion9() {
  Report r = manual("quadratic-fields", Json::object(), 7);
  const std::vector<std::pair<std::int64_t, std::size_t>> class_numbers = {{-3, 1}, {-4, 1}, {-23, 3}, {-47, 5}, {-163, 1}};
  for (auto [D, h] : class_numbers) {
    const std::size_t oracle_h = oracle::classes_by_reduction(D).size();
    const std::size_t got = make_field(D).h;
    r.add("class_number", status_of(oracle_h == h && got == h), Json{{"D", D}, {"h", got}, {"oracle", oracle_h}});
  }
  for (auto [D, f] : {std::pair{-3, 6}, std::pair{-4, 4}, std::pair{-7, 2}})
    r.add("unit_order", status_of(make_field(D).f == f), Json{{"D", D}, {"f", make_field(D).f}});
  for (std::int64_t D : {-3, -4, -7, -8}) {
    const ImagQuadField K = make_field(D);
    for (std::int64_t l : {2, 3, 5, 7, 11}) {
      const int roots = oracle::roots_mod(D, l);
      const Splitting want = roots == 0 ? Splitting::Inert : roots == 1 ? Splitting::Ramified : Splitting::Split;
      const Splitting got = splitting(K, l);
      Json fields{{"D", D}, {"l", l}, {"splitting", std::string(to_string(got))}};
      bool ok = got == want;
      if (got == Splitting::Inert) {
        fields["eisenstein"] = eisenstein_eigenvalue(K, l);
        ok = ok && eisenstein_eigenvalue(K, l) == l * l + 1;
      }
      r.add("inertness", status_of(ok), fields);
    }
  }
  Report field = cmd_field(config(7), -23, {2, 3, 5, 7});
  merge(r, field, "field_");
  return r;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Report()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "semisimplification sweep p=5", criterion1},
      {2, "composition factors equal constituent formula", criterion2},
      {3, "dimension identities", criterion3},
      {4, "phi/psi model isomorphism", criterion4},
      {5, "Psi embedding rank and equivariance", criterion5},
      {6, "invariants lemmas at p=7", criterion6},
      {7, "exceptional case p=7 strict", criterion7},
      {8, "connecting map check", criterion8},
      {9, "quadratic field oracles", criterion9},
  };
  bool all_ok = true;
  std::vector<std::string> first;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string line;
    bool ok = false;
    try {
      const Report r = c.run();
      first.push_back(render(r, Format::Json));
      ok = r.ok() && r.passed > 0;
      line = std::to_string(r.passed) + " pass, " + std::to_string(r.failed) + " fail, " + std::to_string(r.skipped) + " skip";
      for (const auto& e : r.results)
        if (e["status"] == "fail") {
          line += "; first failure: " + e.dump();
          break;
        }
    } catch (const std::exception& e) {
      first.push_back("");
      line = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%s; %.1f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, line.c_str(), secs);
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::size_t differing = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string again;
    try {
      again = render(criteria[i].run(), Format::Json);
    } catch (const std::exception&) {
    }
    if (again.empty() || again != first[i]) ++differing;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool det_ok = differing == 0;
  std::printf("%s criterion 10: byte-identical reports on rerun (%zu of %zu differ; %.1f s)\n", det_ok ? "PASS" : "FAIL",
              differing, criteria.size(), secs);
  all_ok = all_ok && det_ok;
  return all_ok ? 0 : 1;
}
