#include "udnsim/figures.hpp"

#include <cmath>
#include <stdexcept>

#include "udnsim/analytic.hpp"

namespace udnsim {

namespace {

struct Curve {
  std::string name;
  ResultTable table;
};

ScenarioConfig base_config(const FigureRequest& req) {
  ScenarioConfig cfg;  // defaults are the evaluation parameter set
  cfg.n_spatial = req.n_spatial > 0 ? req.n_spatial : (req.fast ? 50 : 500);
  if (req.seed_set) cfg.master_seed = req.seed;
  cfg.n_threads = req.n_threads;
  return cfg;
}

ResultRow make_row(double value, const ScenarioConfig& cfg, const MetricSet& m) {
  ResultRow row;
  row.value = value;
  row.has_sim = true;
  row.sim = m;
  row.has_analytic = true;
  row.analytic = analytic_point(cfg);
  return row;
}

// Sweep an axis at fixed rho; one table per invocation.
ResultTable sweep_table(const ScenarioConfig& base, SweepAxis axis,
                        const std::vector<double>& values) {
  ResultTable t;
  t.axis = std::string(sweep_axis_name(axis));
  t.mode = RunMode::Both;
  for (const double v : values) {
    const ScenarioConfig cfg = apply_axis(base, axis, v);
    t.rows.push_back(make_row(v, cfg, run_experiment(cfg)));
  }
  return t;
}

// Rows over rho, sharing spatial/fading sampling across the whole grid.
ResultTable rho_table(const ScenarioConfig& base, const std::vector<double>& rhos) {
  ResultTable t;
  t.axis = "rho";
  t.mode = RunMode::Both;
  const auto metrics = run_experiment_rho_grid(base, rhos);
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    ScenarioConfig cfg = base;
    cfg.rho = rhos[i];
    t.rows.push_back(make_row(rhos[i], cfg, metrics[i]));
  }
  return t;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
  return out;
}

std::string curve_label(double v) {
  if (std::isinf(v)) return "inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::vector<Curve> build_figure(const FigureRequest& req) {
  const std::vector<double> m_grid = make_grid(1, 10, 1);
  std::vector<Curve> curves;
  ScenarioConfig base = base_config(req);

  if (req.id == "5a") {
    // ASE_h vs M for rho in {2, 4, inf} at the default densities; HTC only.
    base.lambda_m = 0.0;
    const std::vector<double> rhos = {2.0, 4.0,
                                      std::numeric_limits<double>::infinity()};
    std::vector<ResultTable> tables(rhos.size());
    for (auto& t : tables) {
      t.axis = "M";
      t.mode = RunMode::Both;
    }
    for (const double m : m_grid) {
      const ScenarioConfig cfg = apply_axis(base, SweepAxis::MulticellSize, m);
      const auto metrics = run_experiment_rho_grid(cfg, rhos);
      for (std::size_t r = 0; r < rhos.size(); ++r) {
        ScenarioConfig point = cfg;
        point.rho = rhos[r];
        tables[r].rows.push_back(make_row(m, point, metrics[r]));
      }
    }
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      curves.push_back({"rho" + curve_label(rhos[r]), std::move(tables[r])});
    }
  } else if (req.id == "5b") {
    base.lambda_m = 0.0;
    base.rho = 2.0;
    for (const double las : {1000.0, 5000.0, 10000.0}) {
      ScenarioConfig c = base;
      c.lambda_s = las;
      curves.push_back({"lambda_s" + curve_label(las),
                        sweep_table(c, SweepAxis::MulticellSize, m_grid)});
    }
  } else if (req.id == "6") {
    base.lambda_m = 0.0;
    const std::vector<double> rhos = make_grid(1.0, 12.0, 0.5);
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
      const ScenarioConfig c = apply_axis(base, SweepAxis::MulticellSize, m);
      curves.push_back({"M" + curve_label(m), rho_table(c, rhos)});
    }
  } else if (req.id == "7a" || req.id == "7b") {
    // Supported-device density (a) and MTC ASE (b) vs M; both live in the
    // same columns, so the two panels share one sweep.
    for (const auto& [las, lah] :
         {std::pair{1000.0, 100.0}, {5000.0, 500.0}, {10000.0, 1000.0}}) {
      ScenarioConfig c = base;
      c.lambda_s = las;
      c.lambda_h = lah;
      curves.push_back({"lambda_s" + curve_label(las),
                        sweep_table(c, SweepAxis::MulticellSize, m_grid)});
    }
  } else if (req.id == "8a") {
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
      const ScenarioConfig c = apply_axis(base, SweepAxis::MulticellSize, m);
      curves.push_back({"M" + curve_label(m),
                        sweep_table(c, SweepAxis::LambdaS,
                                    make_grid(1000.0, 10000.0, 1000.0))});
    }
  } else if (req.id == "8b") {
    const std::vector<double> lma = {1e3, 3e3, 1e4, 3e4, 1e5, 3e5, 1e6};
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
      const ScenarioConfig c = apply_axis(base, SweepAxis::MulticellSize, m);
      curves.push_back({"M" + curve_label(m),
                        sweep_table(c, SweepAxis::LambdaMActive, lma)});
    }
  } else if (req.id == "9a" || req.id == "9b") {
    base.lambda_m = 0.0;
    const bool vs_cells = req.id == "9a";
    const auto grid = vs_cells ? make_grid(1000.0, 10000.0, 1000.0)
                               : make_grid(100.0, 1000.0, 100.0);
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& [m, rho] :
         {std::pair{1.0, 2.0}, {2.0, 2.0}, {5.0, 2.0}, {1.0, inf}, {2.0, inf}}) {
      ScenarioConfig c = apply_axis(base, SweepAxis::MulticellSize, m);
      c.rho = rho;
      curves.push_back(
          {"M" + curve_label(m) + "_rho" + curve_label(rho),
           sweep_table(c, vs_cells ? SweepAxis::LambdaS : SweepAxis::LambdaH,
                       grid)});
    }
  } else {
    std::string valid;
    for (const auto& id : known_figure_ids()) {
      if (!valid.empty()) valid += ", ";
      valid += id;
    }
    throw std::invalid_argument("unknown figure id '" + req.id +
                                "' (valid: " + valid + ")");
  }
  return curves;
}

}  // namespace

std::vector<std::string> known_figure_ids() {
  return {"5a", "5b", "6", "7a", "7b", "8a", "8b", "9a", "9b"};
}

std::vector<std::string> reproduce_figure(const FigureRequest& request) {
  const auto curves = build_figure(request);
  const char* ext = request.format == OutputFormat::Csv ? ".csv" : ".json";
  std::vector<std::string> written;
  for (const Curve& c : curves) {
    const std::string path =
        request.out_prefix + "_fig" + request.id + "_" + c.name + ext;
    emit_results(c.table, request.format, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace udnsim
