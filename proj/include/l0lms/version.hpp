#pragma once

namespace l0lms {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace l0lms
