#pragma once

namespace ks3 {

inline constexpr char kToolName[] = "ks3";
inline constexpr char kVersion[] = "1.0.0";

}  // namespace ks3
