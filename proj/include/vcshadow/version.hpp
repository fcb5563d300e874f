#pragma once

namespace vcshadow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vcshadow
