#pragma once

namespace huq {

inline constexpr const char* kToolName = "huq";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace huq
