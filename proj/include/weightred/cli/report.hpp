#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "weightred/cli/config.hpp"

namespace weightred::cli {

enum class Status { Pass, Fail, Skip };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

inline Status status_of(bool ok) { return ok ? Status::Pass : Status::Fail; }

struct Report {
  std::string command;
  Json args = Json::object();
  Json config = Json::object();
  Json results = Json::array();
  std::vector<std::string> warnings;
  std::size_t passed = 0, failed = 0, skipped = 0;
  std::int64_t timing_ms = 0;
  std::optional<bool> cache_hit;

  /// Appends a result entry; `name` and `status` come first.
  void add(const std::string& name, Status status, Json fields = Json::object()) {
    Json entry;
    entry["name"] = name;
    entry["status"] = std::string(to_string(status));
    for (auto& [k, v] : fields.items()) entry[k] = v;
    results.push_back(std::move(entry));
    switch (status) {
      case Status::Pass: ++passed; break;
      case Status::Fail: ++failed; break;
      case Status::Skip: ++skipped; break;
    }
  }

  bool ok() const { return failed == 0; }

  Json to_json() const {
    Json j;
    j["schema"] = "weightred/1";
    j["command"] = Json{{"name", command}, {"args", args}};
    j["config"] = config;
    j["results"] = results;
    j["summary"] = Json{{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    j["warnings"] = warnings;
    if (cache_hit) j["cache_hit"] = *cache_hit;
    j["timing_ms"] = timing_ms;
    return j;
  }

  /// Rebuilds a report from its JSON form.
  static Report from_json(const Json& j) {
    Report r;
    r.command = j.at("command").at("name").get<std::string>();
    r.args = j.at("command").at("args");
    r.config = j.at("config");
    r.results = j.at("results");
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.passed = j.at("summary").at("passed").get<std::size_t>();
    r.failed = j.at("summary").at("failed").get<std::size_t>();
    r.skipped = j.at("summary").at("skipped").get<std::size_t>();
    if (j.contains("cache_hit")) r.cache_hit = j.at("cache_hit").get<bool>();
    r.timing_ms = j.at("timing_ms").get<std::int64_t>();
    return r;
  }
};

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// One row per result; columns are the union of keys in first-seen order.
inline std::string to_csv(const Report& r) {
  std::vector<std::string> cols;
  for (const auto& e : r.results)
    for (const auto& [k, v] : e.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::ostringstream out;
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
  out << "\n";
  for (const auto& e : r.results) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ",";
      if (e.contains(cols[i])) out << csv_escape(scalar_text(e.at(cols[i])));
    }
    out << "\n";
  }
  return out.str();
}

inline std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.command << " " << r.args.dump() << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  for (const auto& e : r.results) {
    out << "  [" << e.at("status").get<std::string>() << "] " << e.at("name").get<std::string>();
    for (const auto& [k, v] : e.items()) {
      if (k == "name" || k == "status") continue;
      out << " " << k << "=" << scalar_text(v);
    }
    out << "\n";
  }
  out << "passed " << r.passed << ", failed " << r.failed << ", skipped " << r.skipped << "\n";
  return out.str();
}

inline std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::Json: return r.to_json().dump(2) + "\n";
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
  }
  return {};
}

}  // namespace weightred::cli
