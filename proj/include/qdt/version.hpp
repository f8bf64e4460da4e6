#pragma once

namespace qdt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportFormat = 1;

}  // namespace qdt
