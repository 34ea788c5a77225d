#pragma once

namespace deltaineff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace deltaineff
