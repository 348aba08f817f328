#pragma once

namespace qpg {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCertificateFormat = "1";

}  // namespace qpg
