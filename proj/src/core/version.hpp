#pragma once

namespace dsp {
inline constexpr const char* kVersion = "1.0.0";
}  // namespace dsp
