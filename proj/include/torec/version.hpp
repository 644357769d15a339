#pragma once

// Version participates in cache keys: any release may change how payloads
// are produced, so cached artifacts never survive across versions.

namespace torec {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace torec
