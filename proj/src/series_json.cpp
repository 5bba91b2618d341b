#include "isingser/series_json.hpp"

namespace isingser {

nlohmann::json series_to_json(const TruncatedSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) {
    coeffs.push_back({numerator(c).str(), denominator(c).str()});
  }
  return nlohmann::json{
      {"schema", kSeriesSchema},
      {"var", var_name(s.var())},
      {"min_exp", s.min_exp()},
      {"order", s.order()},
      {"coeffs", std::move(coeffs)},
  };
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema", "") != kSeriesSchema)
    throw SeriesError("series JSON: missing or unknown schema tag");
  auto var = var_from_name(j.at("var").get<std::string>());
  if (!var) throw SeriesError("series JSON: unknown variable tag");
  long min_exp = j.at("min_exp").get<long>();
  long order = j.at("order").get<long>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (!c.is_array() || c.size() != 2)
      throw SeriesError("series JSON: coefficient must be a [num, den] pair");
    Rational q(Int(c[0].get<std::string>()), Int(c[1].get<std::string>()));
    coeffs.push_back(std::move(q));
  }
  return TruncatedSeries(*var, min_exp, order, std::move(coeffs));
}

}  // namespace isingser
