#pragma once

namespace ruc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ruc
