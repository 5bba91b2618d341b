#include <isingser/cache.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <isingser/series_json.hpp>

namespace fs = std::filesystem;

namespace isingser {

namespace {

constexpr const char* kRecordSchema = "isingser.cache/1";

// parts joined with an unlikely separator; doubles as the collision guard
// stored inside the record
std::string descriptor_of(const std::vector<std::string>& parts) {
  std::string d = kEngineVersion;
  for (const auto& p : parts) {
    d += '\x1f';
    d += p;
  }
  return d;
}

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

SeriesCache::SeriesCache(std::string root) : root_(std::move(root)) {
  if (root_.empty()) {
    const char* env = std::getenv("ISINGSER_CACHE");
    root_ = (env != nullptr && *env != '\0') ? env : "./.isingser-cache";
  }
}

std::string SeriesCache::key_for(const std::vector<std::string>& parts) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(descriptor_of(parts))));
  return buf;
}

std::optional<TruncatedSeries> SeriesCache::load(const std::vector<std::string>& parts) {
  const fs::path file = fs::path(root_) / (key_for(parts) + ".json");
  std::ifstream in(file);
  if (!in) {
    ++stats_.misses;
    return std::nullopt;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("schema").get<std::string>() != kRecordSchema ||
        j.at("engine").get<std::string>() != kEngineVersion ||
        j.at("descriptor").get<std::string>() != descriptor_of(parts)) {
      ++stats_.misses;
      return std::nullopt;
    }
    TruncatedSeries s = series_from_json(j.at("series"));
    ++stats_.hits;
    return s;
  } catch (const std::exception&) {
    ++stats_.misses;
    return std::nullopt;
  }
}

void SeriesCache::store(const std::vector<std::string>& parts, const TruncatedSeries& series,
                        const std::string& provenance) {
  nlohmann::json j;
  j["schema"] = kRecordSchema;
  j["engine"] = kEngineVersion;
  j["descriptor"] = descriptor_of(parts);
  j["provenance"] = provenance;
  j["series"] = series_to_json(series);

  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) return;  // cache is best-effort; computation already succeeded

  const fs::path final_path = fs::path(root_) / (key_for(parts) + ".json");
  std::ostringstream tmp_name;
  tmp_name << final_path.filename().string() << ".tmp." << ::getpid();
  const fs::path tmp_path = fs::path(root_) / tmp_name.str();
  {
    std::ofstream out(tmp_path);
    if (!out) return;
    out << j.dump(1) << '\n';
    if (!out.good()) {
      out.close();
      fs::remove(tmp_path, ec);
      return;
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) fs::remove(tmp_path, ec);
  ++stats_.writes;
}

TruncatedSeries cached_series(SeriesCache* cache, const std::vector<std::string>& parts,
                              const std::string& provenance,
                              const std::function<TruncatedSeries()>& compute) {
  if (cache == nullptr) return compute();
  if (auto hit = cache->load(parts)) return *hit;
  TruncatedSeries s = compute();
  cache->store(parts, s, provenance);
  return s;
}

}  // namespace isingser
