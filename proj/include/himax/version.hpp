#pragma once

namespace himax {
inline constexpr const char* kVersion = "1.0.0";
}
