#pragma once

#include <json.hpp>

#include "isingser/series.hpp"

namespace isingser {

// Schema "isingser.series/1":
//   { "schema": "isingser.series/1", "var": "<name>", "min_exp": m,
//     "order": N, "coeffs": [["num","den"], ...] }
// coeffs is dense over [min_exp, order]; numbers are decimal strings so that
// arbitrary-size values survive the round trip.
inline constexpr const char* kSeriesSchema = "isingser.series/1";

nlohmann::json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

}  // namespace isingser
