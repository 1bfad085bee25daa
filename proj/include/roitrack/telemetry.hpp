#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "roitrack/trials.hpp"

namespace roitrack {

// Telemetry CSV: header "t,x,y,P,sector,yaw_cmd,pitch_cmd,visible", one row
// per sample, reals with 9 significant digits, visible as 0/1.

inline constexpr std::string_view kTelemetryHeader = "t,x,y,P,sector,yaw_cmd,pitch_cmd,visible";

/// printf "%.9g" in the C locale.
std::string format_real(double v);

std::string to_csv(const TrialRecord& record);

/// Parses telemetry CSV. dt is recovered from the time column; ticks are
/// t / dt rounded. Throws FormatError with the offending line.
TrialRecord parse_csv(std::string_view text, const std::string& source = "<csv>");

/// Record as it reads back after a CSV round trip.
TrialRecord serialized(const TrialRecord& record);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace roitrack
