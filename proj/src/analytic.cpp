#include "udnsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "udnsim/quadrature.hpp"

namespace udnsim {

namespace {

constexpr double kShape = 3.5;  // Gamma cell-size fitting constant

double activation_fraction_upto(double ratio_h_s, int k) {
  return 1.0 - std::pow(kShape / (kShape + k * ratio_h_s), kShape);
}

// integral_{x0}^inf du/(1+u^b) as the alternating series
// sum_m (-1)^{m+1} x0^{1-mb} / (mb - 1), valid for x0^b > 1.
double tail_integral(double x0, double b) {
  double sum = 0.0;
  double sign = 1.0;
  const double step = std::pow(x0, -b);
  double power = std::pow(x0, 1.0 - b);
  for (int m = 1; m < 400; ++m) {
    const double term = sign * power / (m * b - 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    sign = -sign;
    power *= step;
  }
  return sum;
}

void check_alpha(double alpha) {
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("path-loss exponent must exceed 2");
  }
}

}  // namespace

TierDensities tier_densities(double lambda_s, double lambda_h, int M) {
  if (!(lambda_s > 0.0)) throw std::invalid_argument("tier_densities: lambda_s must be > 0");
  if (!(lambda_h >= 0.0)) throw std::invalid_argument("tier_densities: lambda_h must be >= 0");
  if (M < 1) throw std::invalid_argument("tier_densities: M must be >= 1");

  const double ratio = lambda_h / lambda_s;
  TierDensities out;
  out.multicell_size = M;
  out.small_cell_density = lambda_s;
  out.tier1_activation_prob = activation_fraction_upto(ratio, 1);
  out.per_tier.resize(static_cast<std::size_t>(M));
  out.per_tier[0] = out.tier1_activation_prob * lambda_s;
  for (int k = 2; k <= M; ++k) {
    const double correction =
        std::pow((kShape * lambda_s + k * lambda_h) /
                     (kShape * lambda_s + (k - 1) * lambda_h),
                 kShape) -
        1.0;
    out.per_tier[static_cast<std::size_t>(k) - 1] =
        correction * std::pow(kShape / (kShape + k * ratio), kShape) * lambda_s;
  }
  for (double v : out.per_tier) out.total += v;
  return out;
}

double active_density_upto(double lambda_s, double lambda_h, int k) {
  if (!(lambda_s > 0.0)) throw std::invalid_argument("active_density_upto: lambda_s must be > 0");
  return activation_fraction_upto(lambda_h / lambda_s, k) * lambda_s;
}

double LoadPmf::cdf(int n) const {
  double c = 0.0;
  for (int i = 0; i <= n && i < static_cast<int>(values.size()); ++i) {
    c += values[static_cast<std::size_t>(i)];
  }
  return c;
}

LoadPmf load_pmf(double load, int n_max) {
  if (!(load >= 0.0)) throw std::invalid_argument("load_pmf: load must be >= 0");
  if (n_max < 0) throw std::invalid_argument("load_pmf: n_max must be >= 0");
  LoadPmf out;
  out.load = load;
  out.values.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (load == 0.0) {
    out.values[0] = 1.0;
    return out;
  }
  double log_f = kShape * (std::log(kShape) - std::log(load + kShape));
  const double log_ratio_base = std::log(load) - std::log(load + kShape);
  out.values[0] = std::exp(log_f);
  for (int n = 0; n < n_max; ++n) {
    log_f += log_ratio_base + std::log((n + kShape) / (n + 1.0));
    out.values[static_cast<std::size_t>(n) + 1] = std::exp(log_f);
  }
  return out;
}

int load_pmf_n_max(double load, double tail) {
  if (load == 0.0) return 0;
  double log_f = kShape * (std::log(kShape) - std::log(load + kShape));
  const double log_ratio_base = std::log(load) - std::log(load + kShape);
  double cum = std::exp(log_f);
  int n = 0;
  while (1.0 - cum >= tail && n < (1 << 24)) {
    log_f += log_ratio_base + std::log((n + kShape) / (n + 1.0));
    cum += std::exp(log_f);
    ++n;
  }
  return n;
}

double interference_integral(double zeta, double alpha) {
  check_alpha(alpha);
  if (zeta <= 0.0) return 0.0;
  if (alpha == 4.0) return std::atan(std::sqrt(zeta));
  const double b = 0.5 * alpha;
  const double x = std::pow(zeta, -2.0 / alpha);
  if (x >= 2.0) return tail_integral(x, b);
  const auto finite = integrate(
      [b](double u) { return 1.0 / (1.0 + std::pow(u, b)); }, x, 2.0, 1e-12);
  return finite.value + tail_integral(2.0, b);
}

double sir_ccdf_htc(double zeta, int k, double p_k_a, double alpha) {
  check_alpha(alpha);
  if (k < 1) throw std::invalid_argument("sir_ccdf_htc: tier must be >= 1");
  if (!(p_k_a >= 0.0 && p_k_a <= 1.0)) {
    throw std::invalid_argument("sir_ccdf_htc: activation fraction must be in [0,1]");
  }
  if (zeta <= 0.0) return 1.0;
  const double base =
      1.0 + p_k_a * std::pow(zeta, 2.0 / alpha) * interference_integral(zeta, alpha);
  return std::pow(base, -static_cast<double>(k));
}

double mean_rate_tier(int k, int M, double p_k_a, double alpha, double rho) {
  check_alpha(alpha);
  if (M < 1) throw std::invalid_argument("mean_rate_tier: M must be >= 1");
  if (!(rho >= 0.0)) throw std::invalid_argument("mean_rate_tier: rho must be >= 0");
  if (rho == 0.0) return 0.0;

  auto integrand = [k, M, p_k_a, alpha](double t) {
    const double zeta = std::exp2(M * t) - 1.0;
    return sir_ccdf_htc(zeta, k, p_k_a, alpha);
  };

  double upper = rho;
  if (std::isinf(rho)) {
    if (!(p_k_a > 0.0)) {
      throw std::domain_error(
          "mean_rate_tier: unbounded rate (rho = inf with zero activation)");
    }
    // Integrand decreases monotonically; truncate where it is negligible.
    upper = 8.0;
    while (integrand(upper) > 1e-10) upper *= 2.0;
  }
  return integrate(integrand, 0.0, upper, 1e-9).value;
}

double ase_htc(double lambda_s, double lambda_h, int M, double alpha,
               double rho) {
  const TierDensities dens = tier_densities(lambda_s, lambda_h, M);
  double total = 0.0;
  for (int k = 1; k <= M; ++k) {
    const double lam = dens.per_tier[static_cast<std::size_t>(k) - 1];
    if (lam <= 0.0) continue;
    total += lam * mean_rate_tier(k, M, lam / lambda_s, alpha, rho);
  }
  return total;
}

MtcAnalytics mtc_analytics(double lambda_s, double lambda_h, double lambda_m,
                           double eta, int M, int n_rb, double alpha) {
  check_alpha(alpha);
  if (n_rb < 1) throw std::invalid_argument("mtc_analytics: N_RB must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("mtc_analytics: eta must be in [0,1]");
  }
  if (!(lambda_m >= 0.0)) throw std::invalid_argument("mtc_analytics: lambda_m must be >= 0");

  MtcAnalytics out;
  out.active_cell_density = active_density_upto(lambda_s, lambda_h, M);
  const double lambda_m_active = eta * lambda_m;
  if (out.active_cell_density <= 0.0 || lambda_m_active <= 0.0) return out;

  out.load_per_cell = lambda_m_active / out.active_cell_density;
  const LoadPmf pmf = load_pmf(out.load_per_cell, n_rb - 1);
  double cum = 0.0;
  double supported = 0.0;
  for (int i = 0; i < n_rb; ++i) {
    cum += pmf.values[static_cast<std::size_t>(i)];
    supported += 1.0 - cum;
  }
  out.mean_supported_per_cell = supported;
  out.supported_density = supported * out.active_cell_density;
  if (supported <= 0.0) return out;

  const double share = supported / n_rb;  // co-channel thinning fraction
  auto integrand = [share, alpha](double t) {
    const double zeta = std::exp2(t) - 1.0;
    if (zeta <= 0.0) return 1.0;
    return 1.0 / (1.0 + share * std::pow(zeta, 2.0 / alpha) *
                            interference_integral(zeta, alpha));
  };
  double upper = 8.0;
  while (integrand(upper) > 1e-10) upper *= 2.0;
  out.mean_rate = integrate(integrand, 0.0, upper, 1e-9).value / n_rb;
  out.ase = out.supported_density * out.mean_rate;
  return out;
}

}  // namespace udnsim
