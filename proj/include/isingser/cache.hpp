#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <isingser/series.hpp>

namespace isingser {

// Engine identity baked into every cache key. Bump whenever a change could
// alter any computed series, so stale entries invalidate themselves.
inline constexpr const char* kEngineVersion = "isingser/1";

struct CacheStats {
  uint64_t hits = 0;
  uint64_t misses = 0;
  uint64_t writes = 0;
};

// On-disk store of computed series, one JSON record per file. Writes go
// through a temp file and an atomic rename, so concurrent producers of the
// same key can only ever leave a complete record. Unreadable or mismatched
// records count as misses; nothing here ever throws on a bad cache file.
class SeriesCache {
 public:
  // Empty root resolves ISINGSER_CACHE, falling back to ./.isingser-cache.
  explicit SeriesCache(std::string root = {});

  const std::string& root() const { return root_; }

  // File-name key: hex hash over the engine version and descriptor parts.
  static std::string key_for(const std::vector<std::string>& parts);

  std::optional<TruncatedSeries> load(const std::vector<std::string>& parts);
  void store(const std::vector<std::string>& parts, const TruncatedSeries& series,
             const std::string& provenance);

  const CacheStats& stats() const { return stats_; }

 private:
  std::string root_;
  CacheStats stats_;
};

// Looks up the descriptor, computing and storing on a miss. cache may be
// null (audit mode): then this is just compute().
TruncatedSeries cached_series(SeriesCache* cache, const std::vector<std::string>& parts,
                              const std::string& provenance,
                              const std::function<TruncatedSeries()>& compute);

}  // namespace isingser
