#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pdwg/harness.hpp"

namespace pdwg {

enum class ReportFormat { Csv, Json };

/// Throws std::invalid_argument for anything but "csv" or "json".
ReportFormat parse_report_format(const std::string& name);

inline constexpr const char* kCsvHeader =
    "level,one_over_h,ndof_lambda,ndof_u,nl0,order_nl0,nl1,order_nl1,e0,order_e0,residual,seconds";

/// Header line plus one row per level. Missing values are left empty, orders
/// are printed with three decimals.
void write_csv(std::ostream& out, const ConvergenceReport& report);
/// Same columns as the CSV inside "levels"; missing values are null.
void write_json(std::ostream& out, const ConvergenceReport& report);
/// Inverse of write_json. Throws std::invalid_argument on malformed input.
ConvergenceReport parse_json(const std::string& text);

std::string to_string(const ConvergenceReport& report, ReportFormat format);

/// Writes the report to `path`; throws std::runtime_error if it cannot be opened.
void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path);

}  // namespace pdwg
