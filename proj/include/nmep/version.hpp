#pragma once

namespace nmep {

inline constexpr const char* kToolName = "nmep";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace nmep
