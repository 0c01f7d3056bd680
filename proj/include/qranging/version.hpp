#pragma once

namespace qranging {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qranging
