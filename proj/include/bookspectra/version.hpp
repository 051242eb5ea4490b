#pragma once

namespace bookspectra {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bookspectra
