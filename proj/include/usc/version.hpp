#pragma once

namespace usc {
inline constexpr const char* kVersion = "0.1.0";
}
