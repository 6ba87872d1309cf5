#pragma once

// Subcommands of the weightred tool, each producing a Report.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "weightred/cli/cache.hpp"
#include "weightred/cli/report.hpp"
#include "weightred/exceptional.hpp"
#include "weightred/invariants.hpp"
#include "weightred/meataxe.hpp"
#include "weightred/quadfield.hpp"

namespace weightred::cli {

inline std::size_t threads_of(const RunConfig& cfg) { return cfg.parallel ? cfg.parallel : default_threads(); }

inline Json label_json(int p, const WeightLabel& w) {
  return Json{{"label", w.to_string(p)}, {"r", w.r}, {"s", w.s}, {"e", w.e},
              {"l", w.l(p)},             {"t", w.t(p)}, {"dim", w.dim()}};
}

inline Json labels_json(int p, const ConstituentList& list) {
  Json out = Json::array();
  for (const auto& w : list) out.push_back(label_json(p, w));
  return out;
}

inline Json label_names(int p, const ConstituentList& list) {
  Json out = Json::array();
  for (const auto& w : list) out.push_back(w.to_string(p));
  return out;
}

/// Runs `compute`, consulting the cache when a directory is configured.
inline Report run_command(const RunConfig& cfg, const std::string& command, const Json& args,
                          const std::function<void(Report&)>& compute) {
  std::optional<Cache> cache;
  std::string key;
  std::vector<std::string> warnings;
  if (!cfg.cache_dir.empty()) {
    cache.emplace(cfg.cache_dir);
    key = cache->key(command, args, cfg.to_json());
    try {
      if (auto hit = cache->get(key)) {
        Report r = Report::from_json(*hit);
        r.cache_hit = true;
        return r;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CacheCorrupt) throw;
      warnings.push_back(std::string(e.what()) + "; recomputed");
      cache->remove(key);
    }
  }
  Report r;
  r.command = command;
  r.args = args;
  r.config = cfg.to_json();
  r.warnings = warnings;
  const auto t0 = std::chrono::steady_clock::now();
  compute(r);
  if (cfg.timing)
    r.timing_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (cache) {
    Json payload = r.to_json();
    payload["warnings"] = Json::array();
    payload.erase("cache_hit");
    cache->put(key, payload);
    r.cache_hit = false;
  }
  return r;
}

// ---------------------------------------------------------------------------

enum class Method { Brauer, Meataxe, Both };

inline Method parse_method(std::string_view s) {
  if (s == "brauer") return Method::Brauer;
  if (s == "meataxe") return Method::Meataxe;
  if (s == "both") return Method::Both;
  throw Error(ErrorCode::Usage, "unknown method " + std::string(s));
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Brauer: return "brauer";
    case Method::Meataxe: return "meataxe";
    case Method::Both: return "both";
  }
  return "?";
}

inline Report cmd_decompose(const RunConfig& cfg, std::int64_t d, std::int64_t e, Method method) {
  const Json args{{"d", d}, {"e", e}, {"method", std::string(to_string(method))}};
  return run_command(cfg, "decompose", args, [&](Report& rep) {
    const TowerPtr tower = make_tower(cfg.p, cfg.strict);
    const int p = tower->p();
    check_degree(*tower, d);
    const auto [r, s] = degree_digits(p, d);
    const ConstituentList cons = diamond_constituents(p, r, s, e);
    const std::size_t total = total_dim(cons);
    rep.add("constituents", status_of(total == proj_count(*tower)),
            Json{{"r", r}, {"s", s}, {"constituents", labels_json(p, cons)}, {"total_dim", total}});
    const std::size_t threads = threads_of(cfg);
    std::optional<ConstituentList> found;
    if (method != Method::Meataxe) {
      const SsReport ss = verify_ss(tower, d, e, p_regular_classes(*tower), threads);
      Json fields{{"classes", ss.classes_checked}};
      fields["failing_class"] = ss.failing_class ? Json(*ss.failing_class) : Json(nullptr);
      rep.add("brauer", status_of(ss.ok), fields);
    }
    if (method != Method::Brauer) {
      const Identifier id(tower, threads);
      const CompositionResult cf = composition_factors(induced_module(tower, d, e), cfg.seed, id);
      found = cf.labels();
      rep.add("meataxe", status_of(*found == cons), Json{{"factors", label_names(p, *found)}});
    }
    if (method == Method::Both) rep.add("agreement", status_of(rep.failed == 0));
  });
}

inline Report cmd_check_diamond(const RunConfig& cfg, std::vector<std::int64_t> ds, std::vector<std::int64_t> es) {
  const Json args{{"d", ds}, {"e", es}};
  return run_command(cfg, "check-diamond", args, [&](Report& rep) {
    const TowerPtr tower = make_tower(cfg.p, cfg.strict);
    const int p = tower->p();
    for (auto d : ds) check_degree(*tower, d);
    const auto classes = p_regular_classes(*tower);
    const std::size_t threads = threads_of(cfg);
    for (auto d : ds)
      for (auto e : es) {
        const SsReport ss = verify_ss(tower, d, e, classes, threads);
        const auto [r, s] = degree_digits(p, d);
        Json fields{{"d", d}, {"e", e}, {"r", r}, {"s", s}, {"constituents", label_names(p, ss.constituents)},
                    {"classes", ss.classes_checked}};
        fields["failing_class"] = ss.failing_class ? Json(*ss.failing_class) : Json(nullptr);
        rep.add("ss", status_of(ss.ok), fields);
      }
  });
}

inline Report cmd_invariants(const RunConfig& cfg, const std::vector<Lemma>& lemmas, const std::vector<int>& fs,
                             bool all) {
  Json lemma_names = Json::array();
  for (auto l : lemmas) lemma_names.push_back(std::string(to_string(l)));
  const Json args{{"lemma", lemma_names}, {"f", fs}, {"all", all}};
  return run_command(cfg, "invariants", args, [&](Report& rep) {
    const TowerPtr tower = make_tower(cfg.p, cfg.strict);
    std::size_t h = 1;
    if (cfg.disc) {
      const ImagQuadField K = make_field(*cfg.disc);
      h = K.h;
      if (!unit_order_compatible(K, tower->p()))
        rep.warnings.push_back("unit order " + std::to_string(K.f) + " does not divide q-1");
    }
    for (auto lemma : lemmas) {
      if (lemma == Lemma::Lem237 && tower->p() <= 5) {
        if (cfg.strict) throw Error(ErrorCode::StrictViolation, "lem2_3_7 requires p > 5");
        rep.warnings.push_back("lem2_3_7 is stated for p > 5; points are reported as skipped");
      }
      for (int f : fs) {
        std::vector<H0Point> pts = lemma_sweep(tower->p(), lemma, f, cfg.seed);
        if (!all) {
          std::vector<H0Point> sample;
          for (std::size_t i = 0; i < pts.size(); i += 5) sample.push_back(pts[i]);
          pts = std::move(sample);
        }
        for (const auto& r : verify_lemma(tower, pts, threads_of(cfg), h)) {
          Json fields{{"lemma", r.citation}, {"group", r.group}, {"module", r.descriptor},
                      {"r", r.point.r},      {"s", r.point.s},   {"d", r.point.d},
                      {"e", r.point.e},      {"f", r.point.f},   {"computed", r.computed}};
          fields["expected"] = r.expected ? Json(*r.expected) : Json(nullptr);
          fields["class_number"] = r.class_number;
          fields["total"] = r.total();
          rep.add("h0", r.skipped() ? Status::Skip : status_of(r.match()), fields);
        }
      }
    }
  });
}

/// Compares the character of m with a weight on every class.
inline bool matches_weight(const GModule& m, const WeightLabel& w, const std::vector<ClassRep>& classes,
                           std::size_t threads) {
  const FieldTower& F = m.field();
  std::vector<char> ok(classes.size(), 0);
  parallel_for(classes.size(), threads,
               [&](std::size_t i) { ok[i] = character_matches(m, classes[i], weight_character(F, w, classes[i])); });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

inline Report cmd_exceptional(const RunConfig& cfg, ExceptionalCase which, std::int64_t l, std::int64_t t) {
  const Json args{{"case", std::string(to_string(which))}, {"l", l}, {"t", t}};
  return run_command(cfg, "exceptional", args, [&](Report& rep) {
    const TowerPtr tower = make_tower(cfg.p, cfg.strict);
    const int p = tower->p();
    const std::size_t threads = threads_of(cfg);
    const ExceptionalData ex = monomial_submodule(tower, l, t, which, cfg.strict);
    for (const auto& w : ex.warnings) rep.warnings.push_back(w);
    const std::size_t expected_m = static_cast<std::size_t>(p - 1) * (p - 1) + 1;
    rep.add("dim_M", status_of(ex.monomials.dim() == expected_m),
            Json{{"dim", ex.monomials.dim()}, {"expected", expected_m}, {"r", ex.r}, {"s", ex.s}});
    rep.add("M_contains_V", status_of(ex.monomials.contains(*tower, ex.psi_image)),
            Json{{"dim_V", ex.psi_image.dim()}});
    rep.add("fixed_class", status_of(fixed_class_check(ex)), Json{{"twist", mod_floor(ex.fixed_twist, p * p - 1)}});
    const ExceptionalFiltration fil = exceptional_filtration(ex);
    Json nodes = Json::array();
    for (const auto& n : fil.exactness.nodes)
      nodes.push_back(Json{{"index", n.index}, {"check", n.check}, {"dim", n.dim}, {"ok", n.ok}});
    rep.add("exact_sequence", status_of(fil.exactness.ok() && fil.direct),
            Json{{"line", fil.line.space.dim()},
                 {"middle", fil.middle.space.dim()},
                 {"W", fil.w.quotient.module->dim()},
                 {"top", fil.top.module->dim()},
                 {"direct", fil.direct},
                 {"nodes", nodes}});
    const auto classes = p_regular_classes(*tower);
    const ExceptionalLabels labels = exceptional_labels(p, which, l, t);
    const std::pair<const char*, std::pair<const GModule*, WeightLabel>> parts[] = {
        {"line", {fil.line.module.get(), labels.line}},
        {"middle", {fil.middle.module.get(), labels.middle}},
        {"top", {fil.top.module.get(), labels.top}}};
    for (const auto& [name, mw] : parts) {
      const bool ok = mw.first->dim() == static_cast<std::size_t>(mw.second.dim()) &&
                      matches_weight(*mw.first, mw.second, classes, threads);
      rep.add(std::string("factor_") + name, status_of(ok), Json{{"expected", label_json(p, mw.second)}});
    }
  });
}

inline Report cmd_field(const RunConfig& cfg, std::int64_t D, const std::vector<std::int64_t>& primes) {
  const Json args{{"disc", D}, {"primes", primes}};
  return run_command(cfg, "field", args, [&](Report& rep) {
    const ImagQuadField K = make_field(D);
    Json forms = Json::array();
    for (const auto& f : reduced_forms(D)) forms.push_back(Json::array({f.a, f.b, f.c}));
    rep.add("class_number", Status::Pass, Json{{"disc", D}, {"h", K.h}, {"forms", forms}});
    rep.add("unit_order", Status::Pass, Json{{"f", K.f}});
    for (auto l : primes) {
      const Splitting s = splitting(K, l);
      Json fields{{"l", l}, {"splitting", std::string(to_string(s))}};
      fields["eisenstein"] = s == Splitting::Ramified ? Json(nullptr) : Json(eisenstein_eigenvalue(K, l));
      rep.add("prime", Status::Pass, fields);
    }
  });
}

/// Exit status: 0 all pass, 1 verification failure.
inline int exit_code(const Report& r) { return r.ok() ? 0 : 1; }

/// Exit status for an error escaping a command.
inline int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InternalMismatch:
    case ErrorCode::UnidentifiedFactor:
    case ErrorCode::DimensionMismatch:
      return 1;
    case ErrorCode::IncompleteEigenbasis:
    case ErrorCode::NotEquivariant:
    case ErrorCode::CacheCorrupt:
    case ErrorCode::LevelMismatch:
    case ErrorCode::AmbientMismatch:
    case ErrorCode::NotSquare:
    case ErrorCode::NotComposable:
    case ErrorCode::NotInjective:
      return 3;
    default:
      return 2;
  }
}

}  // namespace weightred::cli
