#pragma once

namespace mimicnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mimicnet
