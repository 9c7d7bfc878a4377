#pragma once

namespace hsbrst {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kReportSchema = "hsbrst-report/1";

} // namespace hsbrst
