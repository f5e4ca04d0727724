#pragma once

#include <string>
#include <vector>

#include "mrb/set_json.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

inline constexpr const char* kReportSchema = "mrb-report/1";

enum class ReportFormat { Json, Markdown };
ReportFormat report_format_from_string(const std::string& s);

struct Report {
  Json json;             // always carries "schema" and "command"
  std::string markdown;  // rendered view of the same content
  int exit_code = 0;
};

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 2;
inline constexpr int kExitIngest = 3;
inline constexpr int kExitUnsupported = 4;

Json report_header(const std::string& command);

// Interval text: "Empty" for empty sets, brackets showing open/closed endpoints otherwise.
std::string interval_cell(const Interval& iv, int precision = 6);
std::string set_cell(const IdentifiedSet& s, int precision = 6);
std::string number_cell(double v, int precision = 6);

// [a.lo - b.hi, a.hi - b.lo], empty when either input is empty.
Interval interval_difference(const Interval& a, const Interval& b);

std::string markdown_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// Serialized text of the report in the requested format (JSON ends with a newline).
std::string render_report(const Report& r, ReportFormat f);
// Writes to `path`, or to stdout when path is empty or "-".
void emit_report(const Report& r, ReportFormat f, const std::string& path);

}  // namespace mrb
