#pragma once

namespace designlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace designlab
