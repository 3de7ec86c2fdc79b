#pragma once

namespace oor {

inline constexpr const char* kVersion = "0.1.0";

} // namespace oor
