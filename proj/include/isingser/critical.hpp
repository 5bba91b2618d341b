#pragma once

#include <string>

#include "isingser/refdata.hpp"

namespace isingser {

// Decimal evaluation of the critical-coupling closed forms, n in 1..6.
// `digits` counts places after the decimal point, 1..50; the internal
// precision is fixed well above the 50-digit ceiling.
std::string critical_value(int n, int digits = 6);

}  // namespace isingser
