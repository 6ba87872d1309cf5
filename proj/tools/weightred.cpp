// weightred: verification runs for the weight-reduction formulas over GL_2(F_{p^2}).

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weightred/cli/commands.hpp"

namespace {

using namespace weightred;
using namespace weightred::cli;

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Usage, "not an integer list: " + s);
    }
  }
  return out;
}

ExceptionalCase parse_case(const std::string& s) {
  if (s == "1" || s == "1,p-2" || s == "first") return ExceptionalCase::First;
  if (s == "2" || s == "p-2,1" || s == "second") return ExceptionalCase::Second;
  throw Error(ErrorCode::Usage, "case must be 1 (r=1, s=p-2) or 2 (r=p-2, s=1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification runs for Serre weights, induced modules and their invariants"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path, format = "json";
  std::optional<int> p_flag;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::size_t> parallel_flag;
  std::optional<std::string> cache_flag;
  bool strict = false, timing = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_flag("--strict", strict, "require p > 5");
  app.add_option("--seed", seed_flag, "random seed");
  app.add_option("--parallel", parallel_flag, "worker threads (0: all cores)");
  app.add_option("--cache-dir", cache_flag, "result cache directory");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--timing", timing, "record wall time in timing_ms");

  auto add_p = [&](CLI::App* sub) { sub->add_option("--p", p_flag, "the prime p")->required(); };

  auto* dec = app.add_subcommand("decompose", "constituents of U^e_d");
  std::int64_t dec_d = 0, dec_e = 0;
  std::string method = "both";
  add_p(dec);
  dec->add_option("--d", dec_d, "degree, 0 <= d <= p^2-2")->required();
  dec->add_option("--e", dec_e, "determinant twist");
  dec->add_option("--method", method)->check(CLI::IsMember({"brauer", "meataxe", "both"}));

  auto* dia = app.add_subcommand("check-diamond", "Brauer-character check of the constituent formula");
  bool dia_all = false;
  std::string dia_d, dia_e;
  add_p(dia);
  dia->add_flag("--all", dia_all, "every degree d");
  dia->add_option("--d", dia_d, "comma-separated degrees");
  dia->add_option("--e", dia_e, "comma-separated twists (default 0,1,7,p^2-2)");

  auto* inv = app.add_subcommand("invariants", "fixed spaces against the closed forms");
  std::string lemma = "all", fs = "2,4,6";
  bool inv_all = false;
  std::optional<std::int64_t> disc;
  add_p(inv);
  inv->add_option("--lemma", lemma, "lem2, lem3, lem3.6, lem2_3_7 or all");
  inv->add_option("--f", fs, "comma-separated unit orders");
  inv->add_flag("--all", inv_all, "full sweep instead of every fifth point");
  inv->add_option("--disc", disc, "field discriminant for the class-number multiplier");

  auto* exc = app.add_subcommand("exceptional", "the (1,p-2) and (p-2,1) analysis");
  std::string exc_case = "1";
  std::int64_t exc_l = 0, exc_t = 0;
  add_p(exc);
  exc->add_option("--case", exc_case, "1: (1,p-2), 2: (p-2,1)");
  exc->add_option("--l", exc_l);
  exc->add_option("--t", exc_t);

  auto* fld = app.add_subcommand("field", "imaginary quadratic field data");
  std::int64_t fld_disc = 0;
  std::string primes = "2,3,5,7,11";
  fld->add_option("--disc", fld_disc, "fundamental discriminant D < 0")->required()->allow_extra_args(false);
  fld->add_option("--primes", primes, "comma-separated rational primes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);
    if (p_flag) cfg.p = *p_flag;
    if (strict) cfg.strict = true;
    if (seed_flag) cfg.seed = *seed_flag;
    if (parallel_flag) cfg.parallel = *parallel_flag;
    if (cache_flag) cfg.cache_dir = *cache_flag;
    if (const char* env = std::getenv("WEIGHTRED_CACHE"); env && *env) cfg.cache_dir = env;
    if (app.get_option("--format")->count() > 0) cfg.format = parse_format(format);
    if (timing) cfg.timing = true;
    if (disc) cfg.disc = *disc;

    Report rep;
    if (*dec) {
      rep = cmd_decompose(cfg, dec_d, dec_e, parse_method(method));
    } else if (*dia) {
      const std::int64_t q = static_cast<std::int64_t>(cfg.p) * cfg.p;
      std::vector<std::int64_t> ds, es = dia_e.empty() ? std::vector<std::int64_t>{0, 1, 7, q - 2} : parse_list(dia_e);
      if (dia_all) {
        for (std::int64_t d = 0; d <= q - 2; ++d) ds.push_back(d);
      } else {
        ds = parse_list(dia_d);
        if (ds.empty()) throw Error(ErrorCode::Usage, "check-diamond needs --all or --d");
      }
      rep = cmd_check_diamond(cfg, ds, es);
    } else if (*inv) {
      std::vector<Lemma> lemmas;
      if (lemma == "all")
        lemmas = {Lemma::Lem2, Lemma::Lem3, Lemma::Lem36, Lemma::Lem237};
      else
        lemmas = {parse_lemma(lemma)};
      std::vector<int> f_list;
      for (auto f : parse_list(fs)) f_list.push_back(static_cast<int>(f));
      rep = cmd_invariants(cfg, lemmas, f_list, inv_all);
    } else if (*exc) {
      rep = cmd_exceptional(cfg, parse_case(exc_case), exc_l, exc_t);
    } else if (*fld) {
      rep = cmd_field(cfg, fld_disc, parse_list(primes));
    }
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << render(rep, cfg.format);
    return exit_code(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
