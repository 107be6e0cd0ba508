#include "orbitbif/root_cache.hpp"

#include <json.hpp>

#include <fstream>

#include "orbitbif/errors.hpp"

namespace orbitbif {

using nlohmann::json;

RootCache RootCache::load(const std::string& path, int dimension_N) {
  RootCache cache(dimension_N);
  std::ifstream in(path);
  if (!in) return cache;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("root cache '" + path + "': " + e.what());
  }
  if (!doc.is_object() || doc.value("version", 0) != 1)
    throw ConfigError("root cache '" + path + "': unsupported version");
  if (doc.value("N", -1) != dimension_N)
    throw ConfigError("root cache '" + path + "': dimension mismatch (file N=" +
                      std::to_string(doc.value("N", -1)) + ", requested N=" +
                      std::to_string(dimension_N) + ")");
  for (const auto& e : doc.at("entries")) {
    cache.entries_[{e.at("l").get<int>(), e.at("m").get<int>()}] = {
        e.at("x").get<double>(), e.at("residual").get<double>()};
  }
  return cache;
}

void RootCache::save(const std::string& path) const {
  std::shared_lock lock(*mutex_);
  json entries = json::array();
  for (const auto& [key, entry] : entries_) {
    entries.push_back(
        {{"l", key.first}, {"m", key.second}, {"x", entry.x}, {"residual", entry.residual}});
  }
  json doc{{"version", 1}, {"N", dimension_N_}, {"entries", std::move(entries)}};
  std::ofstream out(path);
  if (!out) throw ConfigError("root cache: cannot write '" + path + "'");
  out << doc.dump() << '\n';
}

std::optional<double> RootCache::lookup(int l, int m) const {
  std::shared_lock lock(*mutex_);
  auto it = entries_.find({l, m});
  if (it == entries_.end()) return std::nullopt;
  return it->second.x;
}

void RootCache::store(int l, int m, double x, double residual) {
  std::unique_lock lock(*mutex_);
  entries_[{l, m}] = {x, residual};
}

std::size_t RootCache::size() const {
  std::shared_lock lock(*mutex_);
  return entries_.size();
}

}  // namespace orbitbif
