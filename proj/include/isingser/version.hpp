#pragma once

namespace isingser {
inline constexpr const char* kEngineVersion = "0.1.0";
}
