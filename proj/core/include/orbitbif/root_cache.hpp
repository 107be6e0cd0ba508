#ifndef ORBITBIF_ROOT_CACHE_HPP
#define ORBITBIF_ROOT_CACHE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

namespace orbitbif {

// Persistent store for computed radial-condition roots, one ball dimension
// per file. Values round-trip bit-identically through the JSON format:
//   {"version":1, "N":2, "entries":[{"l":0,"m":1,"x":...,"residual":...}]}
// Reads are concurrent; writes are exclusive.
class RootCache {
 public:
  explicit RootCache(int dimension_N)
      : dimension_N_(dimension_N), mutex_(std::make_unique<std::shared_mutex>()) {}

  // Parses the file when it exists; a missing file yields an empty cache.
  // Throws ConfigError on malformed content or a dimension mismatch.
  static RootCache load(const std::string& path, int dimension_N);

  void save(const std::string& path) const;

  int dimension() const { return dimension_N_; }

  std::optional<double> lookup(int l, int m) const;
  void store(int l, int m, double x, double residual);

  std::size_t size() const;

 private:
  int dimension_N_;
  std::unique_ptr<std::shared_mutex> mutex_;
  struct Entry {
    double x;
    double residual;
  };
  std::map<std::pair<int, int>, Entry> entries_;
};

}  // namespace orbitbif

#endif
