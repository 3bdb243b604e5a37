#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "dmf/tree.hpp"

namespace dmf {

inline constexpr const char* kCodeVersion = "1.0.0";

/// $DMF_CACHE_DIR if set, else $XDG_CACHE_HOME/dmf, else ~/.cache/dmf, else ./.dmf-cache.
std::filesystem::path default_cache_dir();

/// Directory of JSON documents addressed by a JSON key. Each file stores its key, so hash
/// collisions and stale files read as misses. Unreadable entries are deleted with a warning.
class JsonStore {
 public:
  using Warn = std::function<void(const std::string&)>;
  /// `warn` defaults to printing on stderr.
  explicit JsonStore(std::filesystem::path dir, Warn warn = {});

  std::optional<nlohmann::json> get(const nlohmann::json& key);
  /// Atomic: written to a temporary file, then renamed.
  void put(const nlohmann::json& key, const nlohmann::json& value);
  std::filesystem::path path_for(const nlohmann::json& key) const;
  const std::filesystem::path& dir() const { return dir_; }
  void warn(const std::string& msg) const;

 private:
  std::filesystem::path dir_;
  Warn warn_;
  std::mutex mu_;
};

nlohmann::json cochain_to_json(const CochainSpace& S);
/// Throws nlohmann::json::exception or std::runtime_error on malformed input.
CochainSpace cochain_from_json(const nlohmann::json& j);

/// Cochain space through the store, keyed by (q, k, l, code version).
CochainSpace cached_cochain_space(JsonStore& store, std::uint32_t q, int k, int l, bool* hit = nullptr);

}  // namespace dmf
