#pragma once

namespace lt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "lt-report/1";

}  // namespace lt
