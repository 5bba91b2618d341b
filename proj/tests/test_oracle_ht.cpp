#include <doctest.h>

#include "isingser/oracle_ht.hpp"

using namespace isingser;

namespace {

TruncatedSeries sparse(int order, std::vector<std::pair<int, long long>> terms) {
  TruncatedSeries s = TruncatedSeries::zero(Var::v, order);
  for (auto& [e, c] : terms) s = add(s, TruncatedSeries::monomial(Var::v, e, Rational(c), order));
  return s;
}

}  // namespace

TEST_CASE("first row correlation through v^15") {
  HtRun run = ht_series_info(CorrelationId::row(1), 15);
  CHECK(run.series == sparse(15, {{1, 1},
                                  {3, 2},
                                  {5, 4},
                                  {7, 12},
                                  {9, 42},
                                  {11, 164},
                                  {13, 686},
                                  {15, 3012}}));
  CHECK(run.padding == 8);
  CHECK(run.peak_states > 0);
}

TEST_CASE("row correlations two through five, truncated") {
  CHECK(ht_series(CorrelationId::row(2), 12) ==
        sparse(12, {{2, 1}, {4, 6}, {6, 16}, {8, 46}, {10, 158}, {12, 618}}));
  CHECK(ht_series(CorrelationId::row(3), 11) ==
        sparse(11, {{3, 1}, {5, 12}, {7, 48}, {9, 152}, {11, 506}}));
  CHECK(ht_series(CorrelationId::row(4), 12) ==
        sparse(12, {{4, 1}, {6, 20}, {8, 118}, {10, 452}, {12, 1564}}));
  CHECK(ht_series(CorrelationId::row(5), 13) ==
        sparse(13, {{5, 1}, {7, 30}, {9, 250}, {11, 1200}, {13, 4606}}));
}

TEST_CASE("sixth row correlation through v^20") {
  TruncatedSeries r6 = ht_series(CorrelationId::row(6), 20);
  CHECK(r6 == sparse(20, {{6, 1},
                          {8, 42},
                          {10, 474},
                          {12, 2862},
                          {14, 12662},
                          {16, 49282},
                          {18, 189702},
                          {20, 770190}}));
}

TEST_CASE("coincident pair is identically one") {
  CHECK(ht_series(CorrelationId::general(0, 0), 4) == TruncatedSeries::constant(Var::v, 1, 4));
  CHECK(ht_series(CorrelationId::row(0), 0) == TruncatedSeries::constant(Var::v, 1, 0));
  CHECK(ht_series(CorrelationId::diagonal(0), 6) == TruncatedSeries::constant(Var::v, 1, 6));
}

TEST_CASE("first subleading row coefficient is n(n+1)") {
  CHECK(ht_series(CorrelationId::row(8), 10).coeff(10) == 72);
  CHECK(ht_series(CorrelationId::row(7), 9).coeff(9) == 56);
}

TEST_CASE("second subleading row coefficient is n(n^3+2n^2+3n+10)/4") {
  for (int n = 1; n <= 6; ++n) {
    Rational expect = Rational(n * (n * n * n + 2 * n * n + 3 * n + 10), 4);
    CHECK(ht_series(CorrelationId::row(n), n + 4).coeff(n + 4) == expect);
  }
}

TEST_CASE("diagonal leading coefficient is the central binomial") {
  CHECK(ht_series(CorrelationId::diagonal(1), 2).coeff(2) == 2);
  CHECK(ht_series(CorrelationId::diagonal(2), 8).coeff(4) == 6);
  CHECK(ht_series(CorrelationId::diagonal(3), 6).coeff(6) == 20);
}

TEST_CASE("series parity follows site parity") {
  CHECK(ht_series(CorrelationId::row(3), 9).pure_parity(1));
  CHECK(ht_series(CorrelationId::diagonal(1), 8).pure_parity(0));
  CHECK(ht_series(CorrelationId::general(2, 1), 7).pure_parity(1));
}

TEST_CASE("subleading row coefficients are even") {
  TruncatedSeries r4 = ht_series(CorrelationId::row(4), 12);
  for (int j = 6; j <= 12; j += 2) {
    Rational c = r4.coeff(j);
    CHECK(numerator(c) % 2 == 0);
  }
}

TEST_CASE("doubling the window margin changes nothing") {
  struct Probe {
    CorrelationId id;
    int order;
  } probes[] = {{CorrelationId::row(2), 8},
                {CorrelationId::diagonal(2), 8},
                {CorrelationId::general(2, 1), 7}};
  for (const auto& p : probes) {
    HtWindow base = default_ht_window(p.id, p.order);
    HtWindow wide = ht_window_with_padding(p.id, 2 * base.padding);
    CHECK(ht_series_on_window(p.id, p.order, wide).series == ht_series(p.id, p.order));
  }
}

TEST_CASE("lattice symmetry: vertical pairs equal horizontal ones") {
  CHECK(ht_series(CorrelationId::general(0, 2), 8) == ht_series(CorrelationId::row(2), 8));
  CHECK(ht_series(CorrelationId::general(3, 0), 9) == ht_series(CorrelationId::row(3), 9));
  CHECK(ht_series(CorrelationId::general(1, 1), 8) == ht_series(CorrelationId::diagonal(1), 8));
}

TEST_CASE("exhaustive enumeration agrees on small windows") {
  // margin 1 supports excursions of one site, enough through v^4 only;
  // beyond that the finite window bites, so compare the common prefix and
  // check the sweep reproduces the enumeration on the identical window
  HtWindow w33{-1, 1, -1, 1, 1};
  TruncatedSeries b33 = ht_series_bruteforce(CorrelationId::row(1), 5, w33);
  CHECK(truncate(b33, 4) == truncate(ht_series(CorrelationId::row(1), 5), 4));
  CHECK(b33 == ht_series_on_window(CorrelationId::row(1), 5, w33).series);

  HtWindow w43{-1, 2, -1, 1, 1};
  CHECK(ht_series_bruteforce(CorrelationId::row(2), 4, w43) == sparse(4, {{2, 1}, {4, 6}}));

  HtWindow w44{-1, 2, -1, 2, 1};
  CHECK(ht_series_bruteforce(CorrelationId::diagonal(1), 6, w44) ==
        ht_series_on_window(CorrelationId::diagonal(1), 6, w44).series);
}

TEST_CASE("oracle rejects bad requests") {
  CHECK_THROWS_AS(ht_series(CorrelationId::row(2), 1), OrderTooSmall);
  CHECK_THROWS_AS(CorrelationId::row(-1), std::invalid_argument);
  CHECK_THROWS_AS(CorrelationId::general(1, -2), std::invalid_argument);
  HtWindow off{1, 4, -1, 1, 1};  // excludes the origin
  CHECK_THROWS_AS(ht_series_bruteforce(CorrelationId::row(1), 3, off), std::invalid_argument);
  CHECK_THROWS_AS(ht_series_on_window(CorrelationId::row(1), 3, off), std::invalid_argument);
}
