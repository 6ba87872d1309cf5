#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "weightred/error.hpp"

namespace weightred::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

inline std::string_view to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "?";
}

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw Error(ErrorCode::Usage, "unknown format " + std::string(s));
}

struct RunConfig {
  int p = 7;
  bool strict = false;
  std::optional<std::int64_t> disc;
  std::uint64_t seed = 1;
  std::size_t parallel = 0;  // 0: all cores
  std::string cache_dir;     // empty: no cache
  Format format = Format::Json;
  bool timing = false;

  /// The part of the configuration that determines results.
  Json to_json() const {
    Json j;
    j["p"] = p;
    j["strict"] = strict;
    j["disc"] = disc ? Json(*disc) : Json(nullptr);
    j["seed"] = seed;
    return j;
  }
};

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw Error(ErrorCode::Usage, "not a boolean: " + v);
}

/// Applies one key=value setting.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "p")
      cfg.p = std::stoi(value);
    else if (key == "strict")
      cfg.strict = parse_bool(value);
    else if (key == "disc")
      cfg.disc = std::stoll(value);
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "parallel")
      cfg.parallel = std::stoul(value);
    else if (key == "cache_dir" || key == "cache-dir")
      cfg.cache_dir = value;
    else if (key == "format")
      cfg.format = parse_format(value);
    else if (key == "timing")
      cfg.timing = parse_bool(value);
    else
      throw Error(ErrorCode::Usage, "unknown config key " + key);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Usage, "bad value for " + key + ": " + value);
  }
}

/// Reads `key = value` lines; `#` starts a comment.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Usage, path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace weightred::cli
