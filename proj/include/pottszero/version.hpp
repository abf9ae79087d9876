#pragma once

namespace pottszero {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pottszero
