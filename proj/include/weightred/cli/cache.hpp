#pragma once

// Content-addressed report cache. Entries are written to a temporary file and
// renamed into place, so readers never see partial files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "weightred/cli/report.hpp"

namespace weightred::cli {

inline constexpr int kCacheVersion = 1;

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

class Cache {
 public:
  explicit Cache(std::filesystem::path dir, int version = kCacheVersion) : dir_(std::move(dir)), version_(version) {}

  /// Key text for a command: name, arguments, result-determining config and version.
  std::string key(const std::string& command, const Json& args, const Json& config) const {
    Json k;
    k["command"] = command;
    k["args"] = args;
    k["config"] = config;
    k["version"] = version_;
    return k.dump();
  }

  std::filesystem::path path_for(const std::string& key) const { return dir_ / (hex64(fnv1a64(key)) + ".json"); }

  /// Stored payload, or nullopt when absent or written by another version.
  /// Throws CacheCorrupt when the entry cannot be parsed or fails its checksum.
  std::optional<Json> get(const std::string& key) const {
    const auto path = path_for(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    Json entry;
    try {
      entry = Json::parse(ss.str());
    } catch (const Json::exception&) {
      throw Error(ErrorCode::CacheCorrupt, "unreadable cache entry " + path.string());
    }
    if (!entry.is_object() || !entry.contains("version") || !entry.contains("payload") ||
        !entry.contains("checksum") || !entry.contains("key"))
      throw Error(ErrorCode::CacheCorrupt, "malformed cache entry " + path.string());
    if (entry["version"] != version_) return std::nullopt;
    if (entry["key"] != key) return std::nullopt;
    if (entry["checksum"] != hex64(fnv1a64(entry["payload"].dump())))
      throw Error(ErrorCode::CacheCorrupt, "checksum mismatch in " + path.string());
    return entry["payload"];
  }

  void put(const std::string& key, const Json& payload) const {
    std::filesystem::create_directories(dir_);
    Json entry;
    entry["version"] = version_;
    entry["key"] = key;
    entry["checksum"] = hex64(fnv1a64(payload.dump()));
    entry["payload"] = payload;
    const auto path = path_for(key);
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw Error(ErrorCode::Usage, "cannot write cache directory " + dir_.string());
      out << entry.dump();
    }
    std::filesystem::rename(tmp, path);
  }

  void remove(const std::string& key) const { std::filesystem::remove(path_for(key)); }

 private:
  std::filesystem::path dir_;
  int version_;
};

}  // namespace weightred::cli
