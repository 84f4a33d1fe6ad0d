// Result tables and plot-ready CSV/JSON emission.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "udnsim/simulator.hpp"

namespace udnsim {

enum class RunMode { Simulate, Analytic, Both };
enum class OutputFormat { Csv, Json };

RunMode parse_run_mode(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

// Closed-form counterparts of the simulated metrics for one configuration.
struct AnalyticPoint {
  double ase_htc = 0.0;
  double ase_mtc = 0.0;
  double lambda_m_supported = 0.0;
  double active_density = 0.0;
  double mtc_mean_rate = 0.0;
};

AnalyticPoint analytic_point(const ScenarioConfig& config);

struct ResultRow {
  double value = 0.0;  // swept axis value
  bool has_sim = false;
  MetricSet sim;
  bool has_analytic = false;
  AnalyticPoint analytic;
};

struct ResultTable {
  std::string axis;
  RunMode mode = RunMode::Both;
  std::vector<ResultRow> rows;
};

// CSV: one header row, then one row per axis value, 9 significant digits.
// JSON: array of records with the same field names.
void write_results(const ResultTable& table, OutputFormat format,
                   std::ostream& out);

// Writes to a file; throws on unwritable paths. Output is byte-stable for a
// fixed table.
void emit_results(const ResultTable& table, OutputFormat format,
                  const std::string& path);

}  // namespace udnsim
