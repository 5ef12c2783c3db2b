#ifndef PSYM3_VERSION_HPP
#define PSYM3_VERSION_HPP

namespace psym3 {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;
} // namespace psym3

#endif
