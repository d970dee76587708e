#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssmc/classify.hpp"
#include "ssmc/config.hpp"

namespace ssmc {

/// CHECK records are identities that must hold; a failing one makes the run
/// exit with status 1. VERDICT records are classifications and VALUE records
/// are fitted or derived numbers; both are informational.
enum class RecordType { Check, Verdict, Value };

struct Record {
  RecordType type = RecordType::Check;
  std::string name;
  std::optional<std::size_t> point;  ///< empty for aggregates over all points
  double number = 0.0;               ///< residual, or the value of a VALUE record
  Status status = Status::Pass;
  std::string note;
};

struct AnalysisReport {
  std::string label;
  std::vector<std::string> coords;
  std::vector<std::vector<double>> points;
  std::vector<Record> records;  ///< point-index order, aggregates last

  std::size_t failed_checks() const;
  std::size_t total_checks() const;
  /// 0 when every CHECK passes, 1 otherwise.
  int exit_code() const { return failed_checks() == 0 ? 0 : 1; }
};

/// Runs the per-point pipeline (frame, connection, curvature bundle,
/// classification, relativity) and aggregates. `threads` = 0 uses the
/// hardware concurrency; record order never depends on it.
AnalysisReport run_analysis(const AnalysisConfig& cfg, unsigned threads = 0);

/// Text report, or one record per line in machine format:
///   CHECK <name> point=<index> residual=<decimal> status=PASS|FAIL
///   VERDICT <name> point=<index>|all residual=<decimal> status=PASS|FAIL|INDETERMINATE
///   VALUE <name> point=<index>|all value=<decimal>
std::string format_report(const AnalysisReport& report, ReportFormat format);

/// Machine-format line of one record.
std::string machine_line(const Record& r);

}  // namespace ssmc
