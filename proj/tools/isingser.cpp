#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <isingser/cache.hpp>
#include <isingser/critical.hpp>
#include <isingser/kernel.hpp>
#include <isingser/oracle_ht.hpp>
#include <isingser/oracle_lt.hpp>
#include <isingser/painleve.hpp>
#include <isingser/polyfit.hpp>
#include <isingser/refdata.hpp>
#include <isingser/series_json.hpp>
#include <isingser/transforms.hpp>

using namespace isingser;

namespace {

// exit 3 carrier for golden --check / --emit
struct GoldenMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IdFlags {
  int row = -1;
  int diag = -1;
  std::string offset;
};

void add_id_flags(CLI::App* cmd, IdFlags& f) {
  auto* r = cmd->add_option("--row", f.row, "row separation n (sites (0,0) and (n,0))");
  auto* d = cmd->add_option("--diag", f.diag, "diagonal separation n (sites (0,0) and (n,n))");
  auto* o = cmd->add_option("--offset", f.offset, "general separation m,n");
  r->excludes(d)->excludes(o);
  d->excludes(o);
}

CorrelationId parse_id(const IdFlags& f) {
  const int given = (f.row >= 0) + (f.diag >= 0) + !f.offset.empty();
  if (given != 1)
    throw CLI::ValidationError("exactly one of --row, --diag, --offset is required");
  if (f.row >= 0) return CorrelationId::row(f.row);
  if (f.diag >= 0) return CorrelationId::diagonal(f.diag);
  int m = 0, n = 0;
  char extra = 0;
  if (std::sscanf(f.offset.c_str(), "%d,%d%c", &m, &n, &extra) != 2)
    throw CLI::ValidationError("--offset expects m,n");
  return CorrelationId::general(m, n);
}

// internal doubled exponent -> display power of khat_gt
std::string half_power(long e) {
  if (e % 2 == 0) return std::to_string(e / 2);
  return "(" + std::to_string(e) + "/2)";
}

bool is_half_exponent_var(Var v) { return v == Var::wgt || v == Var::wlt; }

std::string display_name(Var v) {
  // the half-exponent tags print under the khat name their exponents refer to
  if (v == Var::wgt) return "kgt_hat";
  if (v == Var::wlt) return "klt_hat";
  return var_name(v);
}

// like to_pretty_string but renders half-integer powers as khat^(p/2)
std::string pretty(const TruncatedSeries& s) {
  if (!is_half_exponent_var(s.var())) return to_pretty_string(s);
  std::ostringstream os;
  const std::string name = display_name(s.var());
  bool first = true;
  for (long e = s.min_exp(); e <= s.order(); ++e) {
    const Rational c = s.coeff(e);
    if (c == 0) continue;
    const Rational ab = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const bool unit = (ab == 1) && e != 0;
    if (!unit) os << to_string(ab);
    if (e != 0) {
      if (!unit) os << "*";
      os << name << "^" << half_power(e);
    }
  }
  if (first) os << "0";
  os << " + O(" << name << "^" << half_power(s.order() + 1) << ")";
  return os.str();
}

void print_series(const TruncatedSeries& s, const std::string& format) {
  if (format == "json") {
    std::cout << series_to_json(s).dump(1) << "\n";
    return;
  }
  if (format == "csv") {
    std::cout << "power,coefficient\n";
    for (long e = s.min_exp(); e <= s.order(); ++e) {
      const std::string p =
          is_half_exponent_var(s.var()) ? half_power(e) : std::to_string(e);
      std::cout << p << "," << to_string(s.coeff(e)) << "\n";
    }
    return;
  }
  std::cout << pretty(s) << "\n";
}

std::string joined(const std::vector<Rational>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

// numerator with integer coefficients over a single positive integer
std::pair<Poly, Int> integer_form(const Poly& p) {
  Int lcm = 1;
  for (const auto& c : p) {
    const Int d = denominator(c);
    lcm = lcm / gcd(lcm, d) * d;
  }
  Poly scaled;
  scaled.reserve(p.size());
  for (const auto& c : p) scaled.push_back(c * Rational(lcm));
  return {scaled, lcm};
}

std::string fit_pretty(const FitResult& fit) {
  auto [num_int, scale] = integer_form(fit.numerator);
  std::ostringstream os;
  const bool rational = poly_degree(fit.denominator) > 0;
  std::string num = poly_to_string(num_int);
  if (scale != 1 || rational) num = "(" + num + ")";
  os << num;
  if (scale != 1) os << "/" << scale.str();
  if (rational) {
    auto [den_int, den_scale] = integer_form(fit.denominator);
    os << " / (" << poly_to_string(den_int) << ")";
    if (den_scale != 1) os << "*" << den_scale.str();
  }
  os << ", surplus residuals: " << joined(fit.surplus_residuals);
  os << ", degree " << fit.degree << ", points used " << fit.points_used;
  if (fit.low_surplus) os << " (single confirming sample)";
  return os.str();
}

std::vector<std::string> rational_strings(const Poly& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(to_string(c));
  return out;
}

int run_golden_lines(const std::vector<std::string>& labels) {
  int bad = 0;
  for (const auto& label : labels) {
    GoldenCheck g = check_golden(label);
    std::printf("%-4s %-22s %s\n", g.ok ? "ok" : "BAD", label.c_str(), g.detail.c_str());
    if (!g.ok) ++bad;
  }
  std::printf("%zu checked, %d mismatched\n", labels.size(), bad);
  return bad;
}

bool label_in_bundle(const std::string& label, const std::string& bundle) {
  const bool high = label.size() > 8 && (label.compare(2, 2, "v_") == 0 ||
                                         label.compare(2, 4, "kkg_") == 0);
  if (bundle == "appendixB") return high;
  // appendixC: every low-temperature series plus the magnetization
  return !high && label != "r1crit";  // crit labels filtered by caller
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact series engine for square-lattice spin-spin correlations\n"
      "(row/diagonal, both sides of criticality, determinant and lattice\n"
      "enumeration backends, golden reference data)"};
  app.require_subcommand(1);

  bool no_cache = false;
  std::string cache_dir;
  app.add_flag("--no-cache", no_cache,
               "audit mode: recompute instead of consulting the series cache");
  app.add_option("--cache-dir", cache_dir,
                 "cache directory (default $ISINGSER_CACHE, else ./.isingser-cache)");

  // ---- ht ----------------------------------------------------------------
  auto* ht = app.add_subcommand("ht", "correlation series above criticality");
  IdFlags ht_id;
  add_id_flags(ht, ht_id);
  int ht_order = -1;
  std::string ht_var = "v", ht_format = "pretty";
  ht->add_option("--order", ht_order, "series order (default separation+8)");
  ht->add_option("--var", ht_var, "output variable: v, x (diagonal only), khat")
      ->check(CLI::IsMember({"v", "x", "khat"}));
  ht->add_option("--format", ht_format, "pretty, json or csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));

  // ---- lt ----------------------------------------------------------------
  auto* lt = app.add_subcommand("lt", "correlation series below criticality");
  IdFlags lt_id;
  add_id_flags(lt, lt_id);
  int lt_order = -1;
  bool lt_connected = false;
  std::string lt_var = "u", lt_format = "pretty";
  lt->add_option("--order", lt_order, "series order in u (default separation+10)");
  lt->add_flag("--connected", lt_connected, "subtract the squared magnetization");
  lt->add_option("--var", lt_var, "output variable: u or khat")
      ->check(CLI::IsMember({"u", "khat"}));
  lt->add_option("--format", lt_format, "pretty, json or csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));

  // ---- fit ---------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "exact polynomial law from sampled coefficients");
  std::string fit_family;
  long fit_offset = 0, fit_nmin = 1, fit_nmax = 6;
  std::string fit_denominator, fit_format = "pretty";
  fit->add_option("--family", fit_family, "ht_row, ht_row_khat, lt_conn or lt_conn_khat")
      ->required()
      ->check(CLI::IsMember({"ht_row", "ht_row_khat", "lt_conn", "lt_conn_khat"}));
  fit->add_option("--offset", fit_offset, "coefficient offset above the leading term")
      ->required();
  fit->add_option("--nmin", fit_nmin, "smallest sampled separation (default 1)");
  fit->add_option("--nmax", fit_nmax, "largest sampled separation (default 6)");
  fit->add_option("--denominator", fit_denominator,
                  "prescribed denominator, comma-separated coefficients ascending "
                  "(e.g. 1,1 for n+1)");
  fit->add_option("--format", fit_format, "pretty or json")
      ->check(CLI::IsMember({"pretty", "json"}));

  // ---- painleve ----------------------------------------------------------
  auto* pain = app.add_subcommand(
      "painleve", "sigma-form ODE residual for a diagonal correlation");
  int pain_n = 1, pain_order = 12;
  std::string pain_branch = "plus";
  bool pain_ratios = false;
  pain->add_option("--n", pain_n, "diagonal separation")->required();
  pain->add_option("--order", pain_order, "diagonal series order (default 12)");
  pain->add_option("--branch", pain_branch, "plus (above criticality) or minus (below)")
      ->check(CLI::IsMember({"plus", "minus"}));
  pain->add_flag("--ratios", pain_ratios,
                 "also print measured vs closed-form coefficient ratios");

  // ---- critical ----------------------------------------------------------
  auto* crit = app.add_subcommand("critical", "correlation value at the critical point");
  int crit_n = 1, crit_digits = 6;
  crit->add_option("--n", crit_n, "separation, 1..6")->required();
  crit->add_option("--digits", crit_digits, "decimal places (default 6)");

  // ---- golden ------------------------------------------------------------
  auto* gold = app.add_subcommand("golden", "golden fixtures vs fresh derivation");
  std::string gold_check, gold_emit, gold_show;
  gold->add_option("--check", gold_check, "fixture label, or 'all'");
  gold->add_option("--emit", gold_emit,
                   "print a named comparison bundle: appendixB (high side) or "
                   "appendixC (low side)")
      ->check(CLI::IsMember({"appendixB", "appendixC"}));
  gold->add_option("--show", gold_show, "print a stored fixture without deriving");

  // ---- table -------------------------------------------------------------
  auto* table = app.add_subcommand("table", "numeric reference tables");
  std::string table_branch, table_k, table_format = "pretty";
  int table_n = 0;
  table->add_option("--branch", table_branch, "high or low")
      ->required()
      ->check(CLI::IsMember({"high", "low"}));
  table->add_option("--k", table_k, "modulus grid point, e.g. 0.3");
  table->add_option("--n", table_n, "separation 1..6 (with --k: print one cell)");
  table->add_option("--format", table_format, "pretty or json")
      ->check(CLI::IsMember({"pretty", "json"}));

  try {
    app.parse(argc, argv);

    SeriesCache cache(cache_dir);
    SeriesCache* cache_ptr = no_cache ? nullptr : &cache;

    if (ht->parsed()) {
      const CorrelationId id = parse_id(ht_id);
      const int order = ht_order >= 0 ? ht_order : id.distance() + 8;
      if (ht_var == "x" && id.dx() != id.dy())
        throw CLI::ValidationError("--var x applies to diagonal correlations only");
      const int pad = default_ht_window(id, order).padding;
      TruncatedSeries s = cached_series(
          cache_ptr,
          {"ht_window", id.label(), "order=" + std::to_string(order),
           "pad=" + std::to_string(pad)},
          "window column sweep", [&] { return ht_series(id, order); });
      if (ht_var == "x") s = halve_exponents(s, Var::x);
      if (ht_var == "khat") s = to_khat_gt(s);
      print_series(s, ht_format);
      return 0;
    }

    if (lt->parsed()) {
      const CorrelationId id = parse_id(lt_id);
      const int order = lt_order >= 0 ? lt_order : id.distance() + 10;
      TruncatedSeries s =
          lt_connected
              ? cached_series(cache_ptr,
                              {"lt_toeplitz_conn", id.label(),
                               "order=" + std::to_string(order)},
                              "determinant minus squared magnetization",
                              [&] { return lt_series_connected(id, order); })
              : cached_series(cache_ptr,
                              {"lt_toeplitz", id.label(),
                               "order=" + std::to_string(order)},
                              "determinant route",
                              [&] { return lt_series_full(id, order); });
      if (lt_var == "khat") s = to_khat_lt(s);
      print_series(s, lt_format);
      return 0;
    }

    if (fit->parsed()) {
      const std::map<std::string, CoefficientFamily> families{
          {"ht_row", CoefficientFamily::ht_row},
          {"ht_row_khat", CoefficientFamily::ht_row_khat},
          {"lt_conn", CoefficientFamily::lt_conn},
          {"lt_conn_khat", CoefficientFamily::lt_conn_khat}};
      const auto points =
          collect_coefficients(families.at(fit_family), fit_offset, fit_nmin, fit_nmax);
      FitResult result;
      if (fit_denominator.empty()) {
        result = fit_minimal_polynomial(points);
      } else {
        Poly den;
        std::stringstream ss(fit_denominator);
        std::string tok;
        while (std::getline(ss, tok, ',')) den.push_back(rational_from_string(tok));
        result = fit_with_denominator(points, den);
      }
      if (fit_format == "json") {
        nlohmann::json j;
        j["poly"] = rational_strings(result.numerator);
        j["denominator"] = rational_strings(result.denominator);
        j["degree"] = result.degree;
        j["surplus"] = rational_strings(result.surplus_residuals);
        j["points_used"] = result.points_used;
        j["low_surplus"] = result.low_surplus;
        std::cout << j.dump(1) << "\n";
      } else {
        std::cout << fit_pretty(result) << "\n";
      }
      return 0;
    }

    if (pain->parsed()) {
      const SigmaBranch branch =
          pain_branch == "plus" ? SigmaBranch::plus : SigmaBranch::minus;
      SigmaSeries sigma = build_sigma(pain_n, branch, pain_order);
      TruncatedSeries res = p6_residual(sigma);
      const char* chart = branch == SigmaBranch::plus ? "x" : "u";
      if (res.is_zero()) {
        std::cout << "residual: 0 (through " << chart << "^" << res.order() << ")\n";
      } else {
        std::cout << "residual: NONZERO, leading term " << to_string(res.leading())
                  << "*" << chart << "^" << res.min_exp() << "\n";
      }
      if (pain_ratios) {
        for (const auto& rc : check_ratio_formulas(pain_n, pain_n, 5)) {
          std::cout << "ratio l=" << rc.ell << ": measured " << to_string(rc.measured)
                    << ", closed form " << to_string(rc.predicted) << ", "
                    << (rc.match ? "match" : "MISMATCH") << "\n";
        }
      }
      return res.is_zero() ? 0 : 3;
    }

    if (crit->parsed()) {
      std::cout << critical_value(crit_n, crit_digits) << "\n";
      return 0;
    }

    if (gold->parsed()) {
      const int actions = !gold_check.empty() + !gold_emit.empty() + !gold_show.empty();
      if (actions != 1)
        throw CLI::ValidationError("pick one of --check, --emit, --show");
      if (!gold_show.empty()) {
        const GoldenSeries& g = golden(gold_show);
        std::cout << pretty(g.series) << "\n";
        if (!g.note.empty()) std::cout << "note: " << g.note << "\n";
        return 0;
      }
      std::vector<std::string> labels;
      if (!gold_check.empty()) {
        if (gold_check == "all")
          labels = checkable_labels();
        else
          labels.push_back(gold_check);
      } else {
        for (const auto& l : golden_labels())
          if (label_in_bundle(l, gold_emit)) labels.push_back(l);
      }
      if (run_golden_lines(labels) != 0) throw GoldenMismatch("golden mismatch");
      return 0;
    }

    if (table->parsed()) {
      const Branch branch = table_branch == "high" ? Branch::high : Branch::low;
      if (!table_k.empty() && table_n > 0) {
        const TableCell& cell = table_cell(branch, table_k, table_n);
        std::cout << "raw: " << cell.raw << "\ncanonical: " << cell.canonical << "\n";
        if (cell.corrected) std::cout << "note: " << cell.note << "\n";
        return 0;
      }
      const auto& grid = table_grid(branch);
      if (table_format == "json") {
        nlohmann::json j;
        for (const auto& k : grid) {
          nlohmann::json row;
          for (int n = 1; n <= 6; ++n) row.push_back(table_cell(branch, k, n).canonical);
          j[k] = row;
        }
        std::cout << j.dump(1) << "\n";
        return 0;
      }
      std::printf("%-6s", "k");
      for (int n = 1; n <= 6; ++n) std::printf(" %10s", ("R" + std::to_string(n)).c_str());
      std::printf("\n");
      for (const auto& k : grid) {
        std::printf("%-6s", k.c_str());
        for (int n = 1; n <= 6; ++n) {
          const TableCell& cell = table_cell(branch, k, n);
          std::printf(" %9s%s", cell.canonical.c_str(), cell.corrected ? "*" : " ");
        }
        std::printf("\n");
      }
      std::printf("entries marked * correct a printed value; see --k/--n for details\n");
      return 0;
    }

    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const GoldenMismatch&) {
    return 3;
  } catch (const ResourceBudgetExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const WindowTooLarge& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
