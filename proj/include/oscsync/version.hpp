#pragma once

namespace oscsync {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oscsync
