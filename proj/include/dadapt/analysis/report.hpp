#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dadapt::analysis {

enum class Verdict { kSatisfied, kViolated, kSkipped };

/// Outcome of checking one inequality or identity on concrete data.
/// satisfied <=> lhs <= rhs + tolerance; a skipped report records why its
/// precondition gate was not met.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  Verdict verdict = Verdict::kSkipped;
  std::string context;

  bool satisfied() const { return verdict == Verdict::kSatisfied; }
  bool skipped() const { return verdict == Verdict::kSkipped; }
  bool violated() const { return verdict == Verdict::kViolated; }
};

BoundReport make_report(std::string name, double lhs, double rhs, double tolerance,
                        std::string context = {});
BoundReport skipped_report(std::string name, std::string reason);

/// CSV header matching write_csv_row.
inline constexpr const char* kReportCsvHeader = "name,lhs,rhs,slack,satisfied,context";

/// One row: name,lhs,rhs,slack,satisfied,context. satisfied is
/// true/false/skipped; context is quoted.
std::string to_csv_row(const BoundReport& report);

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace dadapt::analysis
