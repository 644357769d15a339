#pragma once

// Content-addressed result cache. Keys hash (artifact version, kind, g, n,
// framing, order) so convention changes invalidate stale entries; writes are
// atomic (temp file + rename); any read anomaly is a miss, never an error.

#include <json.hpp>

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <torec/version.hpp>

namespace torec {

// FNV-1a over the canonical key string; 16 hex digits.
inline std::string cache_key(const std::string& kind, int g, int n,
                             const std::string& framing_str, int order) {
  const std::string material = std::string(kVersion) + "|" + kind + "|" + std::to_string(g) +
                               "|" + std::to_string(n) + "|" + framing_str + "|" +
                               std::to_string(order);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : material) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// Precedence: explicit flag, then TOREC_CACHE_DIR, then XDG_CACHE_HOME/torec,
// then ~/.cache/torec. An empty flag value means "not given".
inline std::filesystem::path resolve_cache_dir(const std::string& flag_value = "") {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("TOREC_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "torec";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "torec";
  return std::filesystem::path(".torec-cache");
}

// Returns the stored payload, or nullopt on any miss condition: absent file,
// unreadable file, malformed JSON, key/version mismatch.
inline std::optional<nlohmann::ordered_json> cache_read(const std::filesystem::path& dir,
                                                        const std::string& key) {
  const std::filesystem::path file = dir / (key + ".json");
  std::error_code ec;
  if (!std::filesystem::exists(file, ec) || ec) return std::nullopt;
  std::ifstream in(file);
  if (!in) return std::nullopt;
  nlohmann::ordered_json entry = nlohmann::ordered_json::parse(in, nullptr, false);
  if (entry.is_discarded() || !entry.is_object()) return std::nullopt;
  if (!entry.contains("key") || !entry.contains("version") || !entry.contains("payload"))
    return std::nullopt;
  if (entry["key"] != key || entry["version"] != kVersion) return std::nullopt;
  return entry["payload"];
}

namespace detail {

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// Best-effort atomic write; failures are silent (the cache is an accelerator,
// not a source of truth).
inline void cache_write(const std::filesystem::path& dir, const std::string& key,
                        const nlohmann::ordered_json& payload) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  nlohmann::ordered_json entry;
  entry["key"] = key;
  entry["version"] = kVersion;
  entry["created_at"] = detail::iso8601_utc_now();
  entry["payload"] = payload;
  const std::filesystem::path file = dir / (key + ".json");
  const std::filesystem::path tmp = dir / (key + ".json.tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << entry.dump(2) << "\n";
    if (!out) {
      out.close();
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace torec
