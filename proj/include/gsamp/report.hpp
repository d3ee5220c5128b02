#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gsamp {

// `trial` is the trial index or "mean". mse_db is the value for that trial
// (the mean for "mean" rows); mean_mse_db repeats the group mean on every row.
struct ReportRow {
  std::string prior;
  std::string mode;
  std::string strategy;
  std::string sampling_filter;
  std::string generator;
  double noise = 0.0;
  std::string trial;
  double mse_db = 0.0;
  double mean_mse_db = 0.0;

  bool operator==(const ReportRow&) const = default;
};

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(const std::string& text);

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"prior", "mode",  "strategy", "sampling_filter", "generator",
                                                "noise", "trial", "mse_db",   "mean_mse_db"};
  return cols;
}

using ReportMetadata = std::map<std::string, std::string>;

// CSV: optional `# key: value` metadata lines, the header, one line per row.
// JSON: {"metadata": {...}, "rows": [{column: value}...]}.
void write_report(std::ostream& out, const std::vector<ReportRow>& rows, ReportFormat format,
                  const ReportMetadata& metadata = {});
std::vector<ReportRow> parse_report(std::istream& in, ReportFormat format);

// Writes to `path`, or stdout for "-". IoFailure when the file cannot be written.
void emit_report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& path,
                 const ReportMetadata& metadata = {});

}  // namespace gsamp
