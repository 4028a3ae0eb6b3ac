#pragma once

namespace cylnls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cylnls
