#pragma once

namespace netepi {

inline constexpr const char* version = "0.1.0";

}  // namespace netepi
