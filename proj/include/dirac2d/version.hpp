#pragma once

namespace dirac2d {

inline constexpr const char* version_string = "1.0.0";

} // namespace dirac2d
