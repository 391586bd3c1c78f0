#include "dadapt/analysis/report.hpp"

#include <charconv>

namespace dadapt::analysis {

BoundReport make_report(std::string name, double lhs, double rhs, double tolerance,
                        std::string context) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.verdict = lhs <= rhs + tolerance ? Verdict::kSatisfied : Verdict::kViolated;
  r.context = std::move(context);
  return r;
}

BoundReport skipped_report(std::string name, std::string reason) {
  BoundReport r;
  r.name = std::move(name);
  r.verdict = Verdict::kSkipped;
  r.context = std::move(reason);
  return r;
}

namespace {

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv_row(const BoundReport& report) {
  const char* verdict = report.verdict == Verdict::kSatisfied ? "true"
                        : report.verdict == Verdict::kViolated ? "false"
                                                               : "skipped";
  return report.name + "," + number(report.lhs) + "," + number(report.rhs) + "," +
         number(report.slack) + "," + verdict + "," + quoted(report.context);
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : reports) out << to_csv_row(r) << '\n';
}

}  // namespace dadapt::analysis
