#include <doctest.h>

#include "isingser/oracle_lt.hpp"

using namespace isingser;

namespace {

TruncatedSeries dense_u(int min_exp, std::vector<long long> ints) {
  std::vector<Rational> coeffs(ints.size());
  for (size_t i = 0; i < ints.size(); ++i) coeffs[i] = Rational(ints[i]);
  int order = min_exp + static_cast<int>(ints.size()) - 1;
  return TruncatedSeries(Var::u, min_exp, order, std::move(coeffs));
}

}  // namespace

TEST_CASE("squared magnetization matches its printed expansion") {
  CHECK(magnetization_squared(11) ==
        dense_u(0, {1, 0, -4, -16, -64, -272, -1228, -5792, -28192, -140448, -712276,
                    -3663664}));
  CHECK(magnetization_squared(1) == TruncatedSeries::constant(Var::u, 1, 1));
  CHECK(magnetization_squared(0) == TruncatedSeries::constant(Var::u, 1, 0));
}

TEST_CASE("full low-temperature row series through u^10") {
  std::vector<TruncatedSeries> rows;
  for (int n = 1; n <= 6; ++n) rows.push_back(lt_series_full(CorrelationId::row(n), 10));
  CHECK(rows[0] == dense_u(0, {1, 0, -4, -12, -36, -120, -448, -1820, -7844, -35256, -163484}));
  CHECK(rows[1] == dense_u(0, {1, 0, -4, -16, -60, -224, -860, -3472, -14764, -65600, -301700}));
  CHECK(rows[2] == dense_u(0, {1, 0, -4, -16, -64, -268, -1152, -4960, -21544, -95596, -435820}));
  CHECK(rows[3] == dense_u(0, {1, 0, -4, -16, -64, -272, -1224, -5680, -26480, -122864, -570520}));
  CHECK(rows[4] == dense_u(0, {1, 0, -4, -16, -64, -272, -1228, -5788, -28036, -137224, -669864}));
  CHECK(rows[5] == dense_u(0, {1, 0, -4, -16, -64, -272, -1228, -5792, -28188, -140240, -706644}));

  // partial sums at u = 1/10 decrease with separation and stay above M^2
  Rational u0(1, 10);
  Rational prev = eval_exact(magnetization_squared(10), u0);
  for (int n = 6; n >= 1; --n) {
    Rational rn = eval_exact(rows[static_cast<size_t>(n - 1)], u0);
    CHECK(rn >= prev);
    prev = rn;
  }
}

TEST_CASE("connected part of the first two rows") {
  CHECK(lt_series_connected(CorrelationId::row(1), 10) ==
        dense_u(3, {4, 28, 152, 780, 3972, 20348, 105192, 548792}));
  CHECK(lt_series_connected(CorrelationId::row(2), 11) ==
        dense_u(4, {4, 48, 368, 2320, 13428, 74848, 410576, 2238496}));
}

TEST_CASE("leading connected coefficients follow the general-n pattern") {
  for (int n = 1; n <= 4; ++n) {
    TruncatedSeries conn = lt_series_connected(CorrelationId::row(n), n + 4);
    CHECK(conn.min_exp() == n + 2);
    CHECK(conn.coeff(n + 2) == 4);
    CHECK(conn.coeff(n + 3) == 4 * (n * n + 2 * n + 4));
    long long n2 = static_cast<long long>(n) * n;
    long long rho2 = (n2 * n2 + 4 * n2 * n + 13 * n2 + 26 * n + 32) / 2;
    CHECK(conn.coeff(n + 4) == 4 * rho2);
  }
}

TEST_CASE("rows coincide with the squared magnetization through u^{n+1}") {
  for (int n = 2; n <= 3; ++n) {
    TruncatedSeries diff =
        sub(lt_series_full(CorrelationId::row(n), n + 1), magnetization_squared(n + 1));
    CHECK(diff.is_zero());
  }
}

TEST_CASE("correlation over squared magnetization, bracket coefficients") {
  TruncatedSeries a1 = ratio_series(CorrelationId::row(1), 6);
  CHECK(a1.coeff(0) == 1);
  CHECK(a1.coeff(1) == 0);
  CHECK(a1.coeff(2) == 0);
  CHECK(a1.coeff(3) == 4);
  CHECK(a1.coeff(4) == 4 * 7);
  CHECK(a1.coeff(5) == 4 * 42);

  // the bracket's second coefficient is (n^4+4n^3+13n^2+26n+40)/2 = 96 at n=2
  TruncatedSeries a2 = ratio_series(CorrelationId::row(2), 7);
  CHECK(a2.coeff(4) == 4);
  CHECK(a2.coeff(5) == 4 * 12);
  CHECK(a2.coeff(6) == 4 * 96);
}

TEST_CASE("cut deformation and window doubling change nothing") {
  for (int n : {1, 2}) {
    CorrelationId id = CorrelationId::row(n);
    TruncatedSeries base = lt_series_full(id, 6);
    auto [px, py] = default_lt_padding(id, 6);
    CHECK(lt_series_on_window(id, 6, px, py, true).series == base);
    CHECK(lt_series_on_window(id, 6, 2 * px, 2 * py, false).series == base);
  }
}

TEST_CASE("trivial and malformed low-temperature requests") {
  CHECK(lt_series_full(CorrelationId::row(0), 5) == TruncatedSeries::constant(Var::u, 1, 5));
  CHECK(lt_series_full(CorrelationId::general(2, 0), 4) ==
        lt_series_full(CorrelationId::row(2), 4));
  CHECK(lt_series_full(CorrelationId::general(0, 3), 4) ==
        lt_series_full(CorrelationId::row(3), 4));
  CHECK_THROWS_AS(lt_series_full(CorrelationId::row(1), 1), OrderTooSmall);
  CHECK_THROWS_AS(lt_series_connected(CorrelationId::row(2), 3), OrderTooSmall);
  CHECK_THROWS_AS(lt_series_full(CorrelationId::general(2, 1), 6), std::invalid_argument);
}

TEST_CASE("diagonal cut: invariances hold") {
  CorrelationId d1 = CorrelationId::diagonal(1);
  TruncatedSeries base = lt_series_full(d1, 6);
  auto [px, py] = default_lt_padding(d1, 6);
  CHECK(lt_series_on_window(d1, 6, px, py, true).series == base);
  CHECK(lt_series_on_window(d1, 6, px + 2, py + 2, false).series == base);
  // same checks one separation up
  CorrelationId d2 = CorrelationId::diagonal(2);
  TruncatedSeries base2 = lt_series_full(d2, 6);
  auto [qx, qy] = default_lt_padding(d2, 6);
  CHECK(lt_series_on_window(d2, 6, qx, qy, true).series == base2);
  CHECK(lt_series_on_window(d2, 6, qx + 2, qy + 2, false).series == base2);
  // connected parts start at u^{2n+2}
  TruncatedSeries c1 = sub(lt_series_full(d1, 6), magnetization_squared(6));
  CHECK(c1.min_exp() == 4);
  TruncatedSeries c2 = sub(lt_series_full(d2, 8), magnetization_squared(8));
  CHECK(c2.min_exp() == 6);
}
