#pragma once

namespace realcech {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace realcech
