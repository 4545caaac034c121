#pragma once

namespace vgp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vgp
