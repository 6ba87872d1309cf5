#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "weightred/cli/commands.hpp"

using namespace weightred;
using namespace weightred::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

/// Runs the tool with `args`, capturing stdout and discarding stderr unless `err` is set.
RunResult run_tool(const std::string& args, const std::string& env = "", bool err = false) {
  const std::string cmd = env + " " + WEIGHTRED_TOOL + " " + args + (err ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "weightred-test-XXXXXX").string();
    path_ = ::mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<fs::path> entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  return out;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_tool("decompose --p 5 --d 0 --e 0").status, 0);
  EXPECT_EQ(run_tool("decompose --p 5 --d 24").status, 2);
  EXPECT_EQ(run_tool("decompose --p 4 --d 1").status, 2);
  EXPECT_EQ(run_tool("nosuchcommand").status, 2);
  EXPECT_EQ(run_tool("decompose --p 5").status, 2);
  EXPECT_EQ(run_tool("field --disc -5").status, 2);
  EXPECT_EQ(run_tool("invariants --p 5 --lemma lem9").status, 2);
  EXPECT_EQ(run_tool("exceptional --p 5 --case 1 --strict").status, 2);
  EXPECT_EQ(run_tool("--help").status, 0);
  EXPECT_EQ(exit_code(Error(ErrorCode::InternalMismatch, "")), 1);
  EXPECT_EQ(exit_code(Error(ErrorCode::UnidentifiedFactor, "")), 1);
  EXPECT_EQ(exit_code(Error(ErrorCode::DimensionMismatch, "")), 1);
  EXPECT_EQ(exit_code(Error(ErrorCode::NotEquivariant, "")), 3);
  EXPECT_EQ(exit_code(Error(ErrorCode::DegreeOutOfRange, "")), 2);
  Report r;
  r.add("x", Status::Pass);
  EXPECT_EQ(exit_code(r), 0);
  r.add("y", Status::Fail);
  EXPECT_EQ(exit_code(r), 1);
}

TEST(Cli, JsonSchemaAndRoundTrip) {
  const RunResult res = run_tool("decompose --p 5 --d 7 --e 1");
  ASSERT_EQ(res.status, 0);
  const Json j = Json::parse(res.out);
  EXPECT_EQ(j["schema"], "weightred/1");
  for (const char* k : {"command", "config", "results", "summary", "warnings", "timing_ms"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["command"]["name"], "decompose");
  EXPECT_EQ(j["config"]["p"], 5);
  EXPECT_EQ(j["timing_ms"], 0);
  EXPECT_EQ(j["summary"]["failed"], 0);
  for (const auto& e : j["results"]) {
    EXPECT_TRUE(e.contains("name"));
    EXPECT_TRUE(e.contains("status"));
  }
  EXPECT_EQ(Report::from_json(j).to_json(), j);
  EXPECT_EQ(render(Report::from_json(j), Format::Json), res.out);
}

TEST(Cli, OutputIsByteIdentical) {
  for (const char* args : {"decompose --p 5 --d 13 --e 2", "check-diamond --p 3 --all", "invariants --p 5 --f 2,4",
                           "exceptional --p 7 --case 2", "field --disc -23"}) {
    const RunResult a = run_tool(args), b = run_tool(args), c = run_tool(std::string("--parallel 1 ") + args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out, c.out) << args;
  }
}

TEST(Cli, TimingIsOptIn) {
  const Json j = Json::parse(run_tool("--timing check-diamond --p 5 --d 0,1,2").out);
  EXPECT_TRUE(j["timing_ms"].is_number_integer());
  EXPECT_GE(j["timing_ms"].get<std::int64_t>(), 0);
}

TEST(Cli, CsvAndTextFormats) {
  const RunResult csv = run_tool("--format csv field --disc -4");
  ASSERT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.rfind("name,status", 0), 0u) << csv.out;
  EXPECT_NE(csv.out.find('\n'), std::string::npos);
  const RunResult text = run_tool("field --disc -4 --format text");
  ASSERT_EQ(text.status, 0);
  EXPECT_NE(text.out.find("pass"), std::string::npos);
  EXPECT_EQ(run_tool("--format xml field --disc -4").status, 2);
}

TEST(Cli, CacheHitCorruptionAndVersion) {
  TempDir dir;
  const std::string args = "--cache-dir " + dir.path().string() + " decompose --p 5 --d 3 --e 0";
  const Json first = Json::parse(run_tool(args).out);
  EXPECT_EQ(first["cache_hit"], false);
  ASSERT_EQ(entries(dir.path()).size(), 1u);
  const Json second = Json::parse(run_tool(args).out);
  EXPECT_EQ(second["cache_hit"], true);
  Json a = first, b = second;
  a.erase("cache_hit");
  b.erase("cache_hit");
  EXPECT_EQ(a, b);

  // a corrupted entry is reported, discarded and recomputed
  const fs::path entry = entries(dir.path())[0];
  { std::ofstream(entry, std::ios::trunc) << "{\"version\": 1, \"payl"; }
  const RunResult bad = run_tool(args, "", true);
  EXPECT_EQ(bad.status, 0);
  EXPECT_NE(bad.out.find("warning"), std::string::npos);
  const Json third = Json::parse(run_tool(args).out);
  EXPECT_EQ(third["cache_hit"], true);

  // a tampered payload fails its checksum
  Json stored = Json::parse(std::ifstream(entry));
  stored["payload"]["summary"]["passed"] = 99;
  { std::ofstream(entry, std::ios::trunc) << stored.dump(); }
  RunConfig cfg;
  cfg.p = 5;
  cfg.cache_dir = dir.path().string();
  const Report rep = cmd_decompose(cfg, 3, 0, Method::Both);
  EXPECT_EQ(rep.cache_hit, false);
  ASSERT_EQ(rep.warnings.size(), 1u);
  EXPECT_NE(rep.warnings[0].find("checksum"), std::string::npos);

  // another cache version does not see these entries
  const Cache v1(dir.path()), v2(dir.path(), kCacheVersion + 1);
  const std::string key = v1.key("decompose", Json{{"d", 3}, {"e", 0}, {"method", "both"}}, cfg.to_json());
  EXPECT_TRUE(v1.get(key).has_value());
  EXPECT_FALSE(v2.get(v2.key("decompose", Json{{"d", 3}, {"e", 0}, {"method", "both"}}, cfg.to_json())).has_value());
  v2.put(key, Json{{"x", 1}});
  EXPECT_FALSE(v1.get(key).has_value());
}

TEST(Cli, CacheDirectoryFromEnvironment) {
  TempDir dir;
  const RunResult r = run_tool("field --disc -7", "WEIGHTRED_CACHE=" + dir.path().string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(entries(dir.path()).size(), 1u);
  EXPECT_EQ(Json::parse(r.out)["cache_hit"], false);
}

TEST(Cli, ConfigFile) {
  TempDir dir;
  const fs::path cfg = dir.path() / "run.conf";
  { std::ofstream(cfg) << "# settings\nseed = 9\nformat = text\n"; }
  const RunResult r = run_tool("--config " + cfg.string() + " field --disc -3");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("field ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("[pass] class_number"), std::string::npos);
  { std::ofstream(cfg, std::ios::trunc) << "colour = blue\n"; }
  EXPECT_EQ(run_tool("--config " + cfg.string() + " field --disc -3").status, 2);
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "strict", "maybe"), Error);
  apply_setting(c, "parallel", "3");
  EXPECT_EQ(c.parallel, 3u);
}

TEST(Cli, SubcommandResults) {
  const Json diamond = Json::parse(run_tool("check-diamond --p 3 --all").out);
  EXPECT_EQ(diamond["summary"]["failed"], 0);
  EXPECT_EQ(diamond["summary"]["passed"], 8 * 4);
  const Json field = Json::parse(run_tool("field --disc -23").out);
  const std::string dumped = field.dump();
  EXPECT_NE(dumped.find("\"h\":3"), std::string::npos) << dumped;
  const Json ex = Json::parse(run_tool("exceptional --p 5 --case 1").out);
  EXPECT_FALSE(ex["warnings"].empty());
  EXPECT_EQ(ex["summary"]["failed"], 0);
}
