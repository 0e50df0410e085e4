#pragma once

namespace gupest {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gupest
