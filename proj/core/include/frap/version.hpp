#pragma once

namespace frap {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSamplesFormat = "frap-samples v1";

}  // namespace frap
