#pragma once

namespace logheat {

inline constexpr const char* kToolName = "logheat";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace logheat
