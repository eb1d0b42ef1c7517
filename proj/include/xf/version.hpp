#pragma once

namespace xf {

inline constexpr const char* version = "0.1.0";

} // namespace xf
