#include "mrb/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mrb/errors.hpp"

namespace mrb {

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "markdown" || s == "md") return ReportFormat::Markdown;
  throw ValidationError("unknown report format '" + s + "' (expected json or markdown)");
}

Json report_header(const std::string& command) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  return j;
}

std::string number_cell(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string interval_cell(const Interval& iv, int precision) {
  if (iv.is_empty()) return "Empty";
  if (iv.is_singleton()) return "{" + number_cell(iv.lo(), precision) + "}";
  return std::string(iv.lo_open() ? "(" : "[") + number_cell(iv.lo(), precision) + ", " +
         number_cell(iv.hi(), precision) + (iv.hi_open() ? ")" : "]");
}

std::string set_cell(const IdentifiedSet& s, int precision) {
  if (is_empty(s)) return "Empty";
  switch (s.kind()) {
    case SetKind::Interval: return interval_cell(s.as<Interval>(), precision);
    case SetKind::Box: {
      std::string out;
      for (const auto& d : s.as<Box>().dims()) out += (out.empty() ? "" : " x ") + interval_cell(d, precision);
      return out;
    }
    case SetKind::Union: {
      std::string out;
      for (const auto& p : s.as<SetUnion>().parts)
        if (!is_empty(p)) out += (out.empty() ? "" : " U ") + set_cell(p, precision);
      return out;
    }
    case SetKind::Grid:
      return std::to_string(s.as<GridSet>().count()) + " of " + std::to_string(s.as<GridSet>().size()) + " grid points";
    case SetKind::Polytope: {
      const auto& p = s.as<HPolytope>();
      std::string out;
      for (std::size_t a = 0; a < p.dim(); ++a) out += (out.empty() ? "" : " x ") + interval_cell(p.project(a), precision);
      return out + " (projections)";
    }
  }
  return "";
}

Interval interval_difference(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval(a.lo() - b.hi(), a.hi() - b.lo(), a.lo_open() || b.hi_open(), a.hi_open() || b.lo_open());
}

std::string markdown_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = "|";
  for (const auto& h : header) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& r : rows) {
    out += "|";
    for (const auto& c : r) out += " " + c + " |";
    out += "\n";
  }
  return out;
}

std::string render_report(const Report& r, ReportFormat f) {
  if (f == ReportFormat::Json) return r.json.dump(2) + "\n";
  return r.markdown;
}

void emit_report(const Report& r, ReportFormat f, const std::string& path) {
  const std::string text = render_report(r, f);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing report to '" + path + "'");
}

}  // namespace mrb
