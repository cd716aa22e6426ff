#pragma once

namespace ckl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ckl
