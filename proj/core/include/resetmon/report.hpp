#pragma once

#include <string>
#include <string_view>

#include "resetmon/harness.hpp"

namespace resetmon {

enum class ReportFormat { Json, Csv };

struct EmitOptions {
    bool include_wall_time = false;
};

inline constexpr int kReportSchema = 1;

/// Stable field order. CSV: one row per trial and a trailing `#aggregate`
/// line (header only for an empty report); T/R undefined prints "-".
std::string emit_report(const ExperimentReport& report, ReportFormat format,
                        const EmitOptions& options = {});

/// Parses a JSON report and recomputes its aggregates from the trial rows;
/// throws ParseError (E_REPORT, E_AGGREGATE) on malformed or inconsistent
/// input.
ExperimentReport load_report_json(std::string_view text);

}  // namespace resetmon
