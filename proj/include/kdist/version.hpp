#pragma once

namespace kdist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kdist
