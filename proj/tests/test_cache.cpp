#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <isingser/cache.hpp>
#include <isingser/oracle_lt.hpp>
#include <isingser/transforms.hpp>

using namespace isingser;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("cache keys separate descriptors and stay stable") {
  const std::string a = SeriesCache::key_for({"ht_window", "row 2", "order=8"});
  CHECK(a == SeriesCache::key_for({"ht_window", "row 2", "order=8"}));
  CHECK(a != SeriesCache::key_for({"ht_window", "row 2", "order=9"}));
  CHECK(a != SeriesCache::key_for({"lt_toeplitz", "row 2", "order=8"}));
  // a separator inside a part must not collide with a part boundary
  CHECK(SeriesCache::key_for({"ab", "c"}) != SeriesCache::key_for({"a", "bc"}));
  CHECK(a.size() == 16);
}

TEST_CASE("store and load round-trip bit-identical series") {
  SeriesCache cache(fresh_dir("isingser-cache-test-rt").string());

  const TruncatedSeries s = lt_series_full(CorrelationId::row(2), 9);
  const std::vector<std::string> parts{"lt_toeplitz", "row 2", "order=9"};
  CHECK(!cache.load(parts).has_value());
  cache.store(parts, s, "determinant route");
  auto back = cache.load(parts);
  REQUIRE(back.has_value());
  CHECK(*back == s);

  // negative and half-step exponents survive too
  const TruncatedSeries w = to_khat_gt(
      TruncatedSeries::monomial(Var::v, 1, Rational(3, 7), 5));
  cache.store({"w"}, w, "test");
  auto wback = cache.load({"w"});
  REQUIRE(wback.has_value());
  CHECK(*wback == w);

  CHECK(cache.stats().hits == 2);
  CHECK(cache.stats().misses == 1);
  CHECK(cache.stats().writes == 2);
}

TEST_CASE("corrupt or foreign records read as misses") {
  SeriesCache cache(fresh_dir("isingser-cache-test-bad").string());
  const std::vector<std::string> parts{"p"};
  const TruncatedSeries s = TruncatedSeries::constant(Var::u, 1, 3);
  cache.store(parts, s, "test");

  const fs::path file = fs::path(cache.root()) / (SeriesCache::key_for(parts) + ".json");
  REQUIRE(fs::exists(file));

  {
    std::ofstream out(file);
    out << "not json";
  }
  CHECK(!cache.load(parts).has_value());

  // same file name, wrong descriptor inside: a hash collision must not serve
  {
    SeriesCache again(cache.root());
    again.store(parts, s, "test");
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const std::string needle = "\\u001fp";
    const auto at = text.find(needle);
    REQUIRE(at != std::string::npos);
    text.replace(at, needle.size(), "\\u001fq");
    std::ofstream out(file);
    out << text;
  }
  CHECK(!cache.load(parts).has_value());
}

TEST_CASE("cached_series computes once and audits clean") {
  SeriesCache cache(fresh_dir("isingser-cache-test-cs").string());
  int computed = 0;
  const std::vector<std::string> parts{"lt_toeplitz", "row 1", "order=7"};
  const auto compute = [&] {
    ++computed;
    return lt_series_full(CorrelationId::row(1), 7);
  };
  const TruncatedSeries first = cached_series(&cache, parts, "determinant route", compute);
  const TruncatedSeries second = cached_series(&cache, parts, "determinant route", compute);
  CHECK(computed == 1);
  CHECK(first == second);

  // audit mode bypasses the cache entirely and must agree bit for bit
  const TruncatedSeries audit = cached_series(nullptr, parts, "determinant route", compute);
  CHECK(computed == 2);
  CHECK(audit == first);
}

TEST_CASE("cache root resolution") {
  SeriesCache explicit_root("/tmp/somewhere-explicit");
  CHECK(explicit_root.root() == "/tmp/somewhere-explicit");

  ::setenv("ISINGSER_CACHE", "/tmp/from-env", 1);
  SeriesCache from_env;
  CHECK(from_env.root() == "/tmp/from-env");

  ::unsetenv("ISINGSER_CACHE");
  SeriesCache fallback;
  CHECK(fallback.root() == "./.isingser-cache");
}
