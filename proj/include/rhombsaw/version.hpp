#pragma once

namespace rhombsaw {
inline constexpr const char* kVersion = "0.1.0";
}
