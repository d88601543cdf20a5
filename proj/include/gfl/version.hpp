#pragma once

namespace gfl {

inline constexpr const char* kToolName = "gfl";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace gfl
