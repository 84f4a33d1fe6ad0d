#include "udnsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace udnsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view v, int line) {
  const std::string s(v);
  if (s == "inf" || s == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) fail(line, "trailing characters in number '" + s + "'");
    return x;
  } catch (const std::invalid_argument&) {
    fail(line, "expected a number, got '" + s + "'");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range: '" + s + "'");
  }
}

std::int64_t parse_int(std::string_view v, int line) {
  std::int64_t x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    fail(line, "expected an integer, got '" + std::string(v) + "'");
  }
  return x;
}

std::vector<double> parse_list(std::string_view v, int line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const std::size_t comma = v.find(',', pos);
    const std::string_view item =
        trim(v.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (!item.empty()) out.push_back(parse_double(item, line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) fail(line, "expected a comma-separated list of numbers");
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view val = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (val.empty()) fail(line_no, "empty value for '" + std::string(key) + "'");

    if (key == "lambda_s") cfg.lambda_s = parse_double(val, line_no);
    else if (key == "lambda_h") cfg.lambda_h = parse_double(val, line_no);
    else if (key == "lambda_m") cfg.lambda_m = parse_double(val, line_no);
    else if (key == "eta") cfg.eta = parse_double(val, line_no);
    else if (key == "M") cfg.multicell_size = static_cast<int>(parse_int(val, line_no));
    else if (key == "rho") cfg.rho = parse_double(val, line_no);
    else if (key == "alpha") cfg.alpha = parse_double(val, line_no);
    else if (key == "N_RB") cfg.n_rb = static_cast<int>(parse_int(val, line_no));
    else if (key == "side") cfg.side_km = parse_double(val, line_no);
    else if (key == "n_spatial") cfg.n_spatial = static_cast<int>(parse_int(val, line_no));
    else if (key == "n_fading") cfg.n_fading = static_cast<int>(parse_int(val, line_no));
    else if (key == "master_seed") cfg.master_seed = static_cast<std::uint64_t>(parse_int(val, line_no));
    else if (key == "noise_over_power") cfg.noise_over_power = parse_double(val, line_no);
    else if (key == "max_se") cfg.max_spectral_efficiency = parse_double(val, line_no);
    else if (key == "mtc_sir_sample_cap") cfg.mtc_sir_sample_cap = static_cast<std::uint64_t>(parse_int(val, line_no));
    else if (key == "n_threads") cfg.n_threads = static_cast<int>(parse_int(val, line_no));
    else if (key == "sir_thresholds") cfg.sir_thresholds = parse_list(val, line_no);
    else fail(line_no, "unknown key '" + std::string(key) + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "lambda_s = " << c.lambda_s << "\n"
      << "lambda_h = " << c.lambda_h << "\n"
      << "lambda_m = " << c.lambda_m << "\n"
      << "eta = " << c.eta << "\n"
      << "M = " << c.multicell_size << "\n"
      << "rho = " << (std::isinf(c.rho) ? "inf" : std::to_string(c.rho)) << "\n"
      << "alpha = " << c.alpha << "\n"
      << "N_RB = " << c.n_rb << "\n"
      << "side = " << c.side_km << "\n"
      << "n_spatial = " << c.n_spatial << "\n"
      << "n_fading = " << c.n_fading << "\n"
      << "master_seed = " << c.master_seed << "\n"
      << "noise_over_power = " << c.noise_over_power << "\n"
      << "max_se = " << c.max_spectral_efficiency << "\n"
      << "mtc_sir_sample_cap = " << c.mtc_sir_sample_cap << "\n"
      << "n_threads = " << c.n_threads << "\n";
  out << "sir_thresholds = ";
  for (std::size_t i = 0; i < c.sir_thresholds.size(); ++i) {
    if (i) out << ",";
    out << c.sir_thresholds[i];
  }
  out << "\n";
  return out.str();
}

}  // namespace udnsim
