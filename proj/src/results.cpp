#include "udnsim/results.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "udnsim/analytic.hpp"

namespace udnsim {

RunMode parse_run_mode(std::string_view name) {
  if (name == "simulate") return RunMode::Simulate;
  if (name == "analytic") return RunMode::Analytic;
  if (name == "both") return RunMode::Both;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected simulate, analytic, both)");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected csv, json)");
}

AnalyticPoint analytic_point(const ScenarioConfig& c) {
  AnalyticPoint out;
  out.ase_htc = ase_htc(c.lambda_s, c.lambda_h, c.multicell_size, c.alpha, c.rho);
  out.active_density = active_density_upto(c.lambda_s, c.lambda_h, c.multicell_size);
  const MtcAnalytics mtc = mtc_analytics(c.lambda_s, c.lambda_h, c.lambda_m,
                                         c.eta, c.multicell_size, c.n_rb, c.alpha);
  out.ase_mtc = mtc.ase;
  out.lambda_m_supported = mtc.supported_density;
  out.mtc_mean_rate = mtc.mean_rate;
  return out;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* kSimColumns[] = {
    "ase_htc_sim",  "ase_htc_se",  "ase_mtc_sim",        "ase_mtc_se",
    "lambda_ms_sim", "lambda_ms_se", "active_density_sim", "active_density_se",
};
const char* kAnColumns[] = {
    "ase_htc_analytic",
    "ase_mtc_analytic",
    "lambda_ms_analytic",
    "active_density_analytic",
};

void write_csv(const ResultTable& t, std::ostream& out) {
  out << t.axis;
  if (t.mode != RunMode::Analytic) {
    for (const char* c : kSimColumns) out << "," << c;
  }
  if (t.mode != RunMode::Simulate) {
    for (const char* c : kAnColumns) out << "," << c;
  }
  out << "\n";
  for (const ResultRow& r : t.rows) {
    out << num(r.value);
    if (t.mode != RunMode::Analytic) {
      out << "," << num(r.sim.ase_htc.mean) << "," << num(r.sim.ase_htc.std_error)
          << "," << num(r.sim.ase_mtc.mean) << "," << num(r.sim.ase_mtc.std_error)
          << "," << num(r.sim.lambda_m_supported.mean)
          << "," << num(r.sim.lambda_m_supported.std_error)
          << "," << num(r.sim.active_density.mean)
          << "," << num(r.sim.active_density.std_error);
    }
    if (t.mode != RunMode::Simulate) {
      out << "," << num(r.analytic.ase_htc) << "," << num(r.analytic.ase_mtc)
          << "," << num(r.analytic.lambda_m_supported)
          << "," << num(r.analytic.active_density);
    }
    out << "\n";
  }
}

void write_json(const ResultTable& t, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& r : t.rows) {
    nlohmann::ordered_json rec;
    rec[t.axis] = r.value;
    if (t.mode != RunMode::Analytic) {
      rec["ase_htc_sim"] = r.sim.ase_htc.mean;
      rec["ase_htc_se"] = r.sim.ase_htc.std_error;
      rec["ase_mtc_sim"] = r.sim.ase_mtc.mean;
      rec["ase_mtc_se"] = r.sim.ase_mtc.std_error;
      rec["lambda_ms_sim"] = r.sim.lambda_m_supported.mean;
      rec["lambda_ms_se"] = r.sim.lambda_m_supported.std_error;
      rec["active_density_sim"] = r.sim.active_density.mean;
      rec["active_density_se"] = r.sim.active_density.std_error;
    }
    if (t.mode != RunMode::Simulate) {
      rec["ase_htc_analytic"] = r.analytic.ase_htc;
      rec["ase_mtc_analytic"] = r.analytic.ase_mtc;
      rec["lambda_ms_analytic"] = r.analytic.lambda_m_supported;
      rec["active_density_analytic"] = r.analytic.active_density;
    }
    arr.push_back(std::move(rec));
  }
  out << arr.dump(2) << "\n";
}

}  // namespace

void write_results(const ResultTable& table, OutputFormat format,
                   std::ostream& out) {
  if (table.rows.empty()) {
    throw std::invalid_argument("write_results: empty table");
  }
  if (format == OutputFormat::Csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

void emit_results(const ResultTable& table, OutputFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  write_results(table, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace udnsim
