#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isingser/oracle_ht.hpp"
#include "isingser/rational.hpp"
#include "isingser/series.hpp"

namespace isingser {

struct UnknownLabel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One reference expansion, embedded verbatim from the printed source.
// `series` holds the printed coefficients densely through `series.order()`;
// exponents the source omits inside that range are zero by construction.
// Comparisons must not look past the printed order.
struct GoldenSeries {
  std::string label;
  bool has_id = false;
  CorrelationId id;
  bool connected = false;
  TruncatedSeries series;
  std::string note;
  // A slot the source prints twice with conflicting values. Stored out of
  // band; `series` stops just below it and no candidate is asserted.
  long ambiguous_exp = -1;
  std::vector<Rational> ambiguous_candidates;
};

const GoldenSeries& golden(const std::string& label);
std::vector<std::string> golden_labels();

// FNV-1a over the embedded fixture text. The expected value is pinned in
// the implementation; a mismatch at first use aborts loading.
std::uint64_t fixtures_checksum();

// Closed form sum_j c_j pi^(-2j) scaled by 2^(pow2_half/2), plus the
// printed decimal rounding used as the regression target.
struct CriticalClosedForm {
  int n = 0;
  int pow2_half = 0;
  std::vector<Rational> pi_inv2_coeffs;
  std::string decimal;
};
const CriticalClosedForm& critical_closed_form(int n);

int pn(int n);
Rational bn(int n);

enum class Branch { high, low };

struct TableCell {
  std::string raw;        // exactly as printed
  std::string canonical;  // corrected where the print is defective, else == raw
  bool corrected = false;
  std::string note;
};

const std::vector<std::string>& table_grid(Branch which);
const TableCell& table_cell(Branch which, const std::string& k, int n);
double table_value(Branch which, const std::string& k, int n);

// Partial sum of the quarter-modulus expansion at k-hat = k/4: derives the
// branch series through `order` in its base chart (v or u), re-expands in
// the modulus family, then delegates to the series-level evaluator.
NumericEval numeric_from_series(const CorrelationId& id, Branch branch, const std::string& k, int order);

// Re-derives one embedded fixture from the oracles and compares through the
// printed order. Labels accepted: every series label plus r1crit..r6crit.
struct GoldenCheck {
  std::string label;
  bool ok = false;
  std::string detail;
};
GoldenCheck check_golden(const std::string& label);
std::vector<std::string> checkable_labels();

}  // namespace isingser
