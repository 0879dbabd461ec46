#pragma once

namespace csfsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace csfsim
