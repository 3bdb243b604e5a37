#include "dmf/cochain_cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dmf {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path default_cache_dir() {
  if (const char* d = std::getenv("DMF_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "dmf";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "dmf";
  return ".dmf-cache";
}

namespace {

// FNV-1a; stable across platforms, unlike std::hash
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

JsonStore::JsonStore(fs::path dir, Warn warn) : dir_(std::move(dir)), warn_(std::move(warn)) {}

void JsonStore::warn(const std::string& msg) const {
  if (warn_)
    warn_(msg);
  else
    std::cerr << msg << '\n';
}

fs::path JsonStore::path_for(const json& key) const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key.dump())));
  return dir_ / (std::string(buf) + ".json");
}

std::optional<json> JsonStore::get(const json& key) {
  std::lock_guard<std::mutex> lock(mu_);
  const fs::path p = path_for(key);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  try {
    std::ifstream in(p);
    json doc = json::parse(in);
    if (!doc.is_object() || !doc.contains("key") || !doc.contains("value"))
      throw std::runtime_error("missing fields");
    if (doc["key"] != key) return std::nullopt;
    return doc["value"];
  } catch (const std::exception& e) {
    warn("warning: discarding corrupt cache entry " + p.string() + " (" + e.what() + ")");
    fs::remove(p, ec);
    return std::nullopt;
  }
}

void JsonStore::put(const json& key, const json& value) {
  std::lock_guard<std::mutex> lock(mu_);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create cache directory " + dir_.string() + ": " + ec.message());
  const fs::path p = path_for(key);
  std::random_device rd;
  fs::path tmp = p;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << json{{"key", key}, {"value", value}}.dump();
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move cache file into place: " + p.string());
  }
}

json cochain_to_json(const CochainSpace& S) {
  return json{{"q", S.q},           {"k", S.k},         {"l", S.l},
              {"basis", S.basis},   {"pivots", S.pivots}, {"prop", S.prop},
              {"support_bound", S.support_bound}};
}

CochainSpace cochain_from_json(const json& j) {
  CochainSpace S;
  S.q = j.at("q").get<std::uint32_t>();
  S.k = j.at("k").get<int>();
  S.l = j.at("l").get<int>();
  S.basis = j.at("basis").get<std::vector<std::vector<Elt>>>();
  S.pivots = j.at("pivots").get<std::vector<std::size_t>>();
  S.prop = j.at("prop").get<std::vector<std::vector<PolyVec>>>();
  S.support_bound = j.at("support_bound").get<int>();
  if (S.k >= 2) S.rep = v_kl(S.q, S.k, S.l);
  const std::size_t dim = S.rep.dim();
  if (S.pivots.size() != S.basis.size() || static_cast<int>(S.prop.size()) != S.support_bound)
    throw std::runtime_error("inconsistent cochain record");
  for (const auto& v : S.basis)
    if (v.size() != dim) throw std::runtime_error("basis vector of wrong length");
  for (const auto& layer : S.prop)
    if (layer.size() != S.basis.size()) throw std::runtime_error("propagation layer of wrong size");
  const std::uint32_t q = S.q;
  for (const auto& v : S.basis)
    for (Elt x : v)
      if (x >= q) throw std::runtime_error("field element out of range");
  return S;
}

CochainSpace cached_cochain_space(JsonStore& store, std::uint32_t q, int k, int l, bool* hit) {
  const json key{{"kind", "cochain"}, {"q", q}, {"k", k}, {"l", l}, {"version", kCodeVersion}};
  if (auto v = store.get(key)) {
    try {
      CochainSpace S = cochain_from_json(*v);
      if (S.q == q && S.k == k && S.l == l) {
        if (hit) *hit = true;
        return S;
      }
    } catch (const std::exception& e) {
      store.warn("warning: discarding corrupt cache entry " + store.path_for(key).string() + " (" + e.what() + ")");
    }
  }
  if (hit) *hit = false;
  CochainSpace S = cochain_space(q, k, l);
  store.put(key, cochain_to_json(S));
  return S;
}

}  // namespace dmf
