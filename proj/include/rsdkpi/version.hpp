#pragma once

namespace rsdkpi {

inline constexpr const char* kToolName = "rsdkpi";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace rsdkpi
