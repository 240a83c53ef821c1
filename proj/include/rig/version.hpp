#pragma once

namespace rig {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rig
