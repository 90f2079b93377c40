#pragma once

namespace degfront {

inline constexpr const char* kVersion = "0.1.0";

} // namespace degfront
