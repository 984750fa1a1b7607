#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

// Fewer than two colors in a loaded dataset.
class ColorCardinality : public ParseError {
 public:
  using ParseError::ParseError;
};

enum class InstanceFormat { kCsv, kMatrixJson };
enum class ReportFormat { kJson, kCsv };

/// `.csv` is CSV, anything else explicit-matrix JSON.
InstanceFormat instance_format_for(const std::string& path);
/// `.csv` is CSV, anything else JSON.
ReportFormat report_format_for(const std::string& path);

/// CSV: header with feature columns f0..f{N-1} and a `color` column holding
/// labels, which map to color indices in order of first appearance.
/// Matrix JSON: {"n", "m", "colors", "dist"}. Throws ParseError (with row and
/// column for CSV) on malformed input and ColorCardinality when m < 2.
Instance load_instance(const std::string& path, InstanceFormat format);
Instance load_instance(const std::string& path);
Instance parse_csv_instance(const std::string& text);
Instance parse_matrix_json(const std::string& text);
std::string matrix_json(const Instance& inst);

std::string solution_json(const Solution& sol);
Solution parse_solution_json(const std::string& text);

ExperimentConfig parse_experiment_config(const std::string& text);

inline const std::vector<std::string> kAlgorithms = {
    "color-blind", "alg-gf", "alg-ds", "gf-to-gfds", "ds-to-gfds"};

struct ReportRow {
  int k = 0;
  std::string algorithm;
  std::string status;  // "ok", "infeasible" or "error"
  std::string message;
  // Set when status is "ok"; pof also needs a color-blind cost.
  std::optional<double> cost;
  std::optional<double> pof;
  std::optional<double> gf_violation;
  std::optional<int> ds_violation;
  std::optional<double> socially_fair;
  std::optional<int> num_centers;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Report {
  std::string input;
  int n = 0;
  int m = 0;
  double delta = 0.0;
  double theta = 0.0;
  int p = 1;
  std::optional<unsigned long long> seed;
  std::vector<ReportRow> rows;  // ordered by k, then by kAlgorithms

  friend bool operator==(const Report&, const Report&) = default;
};

struct TimingRow {
  int k = 0;
  std::string algorithm;
  double seconds = 0.0;  // includes the input stage for the pipelines
};

/// Wall-clock measurements, kept out of Report so reports stay reproducible.
struct Timing {
  std::vector<TimingRow> rows;
  // Per k: post-processing time over the time of the stage it starts from.
  std::vector<std::pair<int, std::optional<double>>> gf_to_gfds_ratio;
  std::vector<std::pair<int, std::optional<double>>> ds_to_gfds_ratio;
};

struct ExperimentResult {
  Report report;
  Timing timing;
};

/// Runs the five algorithms for every k with bounds derived from delta and
/// theta. Infeasibility and solver failures are recorded in the row.
ExperimentResult run_experiment(const Instance& inst, const ExperimentConfig& cfg);

std::string report_json(const Report& report);
std::string report_csv(const Report& report);
Report parse_report_json(const std::string& text);
Report parse_report_csv(const std::string& text);
std::string timing_json(const Timing& timing);

/// Writes the report; throws Error naming the path when it cannot be written.
void emit_report(const Report& report, const std::string& path, ReportFormat format);
Report parse_report(const std::string& path, ReportFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace fairkc
