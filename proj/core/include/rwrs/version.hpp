#pragma once

namespace rwrs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rwrs
