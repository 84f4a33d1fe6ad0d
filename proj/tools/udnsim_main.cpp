// Command-line front end: scenario configs in, experiment/sweep/figure data
// out. See README.md for the file formats.
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udnsim/config.hpp"
#include "udnsim/figures.hpp"
#include "udnsim/results.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) {
      if (item == "inf" || item == "infinity") {
        out.push_back(std::numeric_limits<double>::infinity());
      } else {
        out.push_back(std::stod(item));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("sweep values must not be empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "udnsim: Monte-Carlo and closed-form evaluation of multi-cell "
      "association in limited-backhaul ultra-dense networks"};

  std::string config_path;
  std::string mode_name = "both";
  std::string sweep_spec;
  std::string figure_id;
  std::string out_path;
  std::string format_name = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool fast = false;
  int threads = 0;

  app.add_option("--config", config_path, "Scenario file (key = value lines)");
  app.add_option("--mode", mode_name, "simulate, analytic or both")
      ->default_str("both");
  app.add_option("--sweep", sweep_spec, "AXIS=v1,v2,... (M, rho, lambda_s, "
                                        "lambda_h, lambda_m_active, N_RB)");
  app.add_option("--figure", figure_id, "Reproduce a preset figure sweep "
                                        "(5a 5b 6 7a 7b 8a 8b 9a 9b)");
  app.add_option("--seed", seed, "Master seed override")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_path, "Output file (default: stdout); for "
                                    "--figure, the output path prefix");
  app.add_option("--format", format_name, "csv or json")->default_str("csv");
  app.add_flag("--fast", fast, "Desk-scale run: 50 spatial realizations");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
    seed_set = app.count("--seed") > 0;

    using namespace udnsim;
    const OutputFormat format = parse_output_format(format_name);

    if (!figure_id.empty()) {
      FigureRequest req;
      req.id = figure_id;
      req.out_prefix = out_path.empty() ? std::string("udnsim") : out_path;
      req.format = format;
      req.fast = fast;
      req.seed_set = seed_set;
      req.seed = seed;
      req.n_threads = threads;
      for (const std::string& f : reproduce_figure(req)) {
        std::cout << f << "\n";
      }
      return 0;
    }

    const RunMode mode = parse_run_mode(mode_name);
    ScenarioConfig base =
        config_path.empty() ? ScenarioConfig{} : parse_config_file(config_path);
    if (seed_set) base.master_seed = seed;
    if (fast) base.n_spatial = 50;
    if (threads > 0) base.n_threads = threads;
    base.validate();

    ResultTable table;
    table.mode = mode;
    SweepAxis axis = SweepAxis::MulticellSize;
    std::vector<double> values;
    if (!sweep_spec.empty()) {
      const std::size_t eq = sweep_spec.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--sweep expects AXIS=v1,v2,...");
      }
      axis = parse_sweep_axis(sweep_spec.substr(0, eq));
      values = parse_values(sweep_spec.substr(eq + 1));
    } else {
      values = {static_cast<double>(base.multicell_size)};
    }
    table.axis = std::string(sweep_axis_name(axis));

    for (const double v : values) {
      const ScenarioConfig cfg = apply_axis(base, axis, v);
      ResultRow row;
      row.value = v;
      if (mode != RunMode::Analytic) {
        row.has_sim = true;
        row.sim = run_experiment(cfg);
      }
      if (mode != RunMode::Simulate) {
        row.has_analytic = true;
        row.analytic = analytic_point(cfg);
      }
      table.rows.push_back(std::move(row));
    }

    if (out_path.empty()) {
      write_results(table, format, std::cout);
    } else {
      emit_results(table, format, out_path);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
