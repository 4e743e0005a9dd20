#pragma once

namespace sq2 {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sq2
