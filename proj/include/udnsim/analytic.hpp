// Closed-form performance expressions for the multi-association model:
// per-tier activation densities, cell-load pmf, downlink SIR distribution,
// backhaul-capped mean rates, and the uplink device metrics. Everything here
// is deterministic numerics; the simulator provides the Monte-Carlo twin.
#pragma once

#include <vector>

namespace udnsim {

struct TierDensities {
  int multicell_size = 1;         // M
  double small_cell_density = 0;  // lambda_s, cells/km^2
  double tier1_activation_prob = 0;
  std::vector<double> per_tier;   // active cells/km^2 on tier k (index k-1)
  double total = 0;               // sum over tiers, all active cells/km^2

  double activation_fraction(int k) const {
    return per_tier[static_cast<std::size_t>(k) - 1] / small_cell_density;
  }
};

// Active-cell density per tier for MultiCell size M. A cell serving users on
// several tiers keeps only the lowest tier, which is what makes the per-tier
// densities shrink with k.
TierDensities tier_densities(double lambda_s, double lambda_h, int M);

// Density of cells active on any tier up to k (the telescoping cumulative).
double active_density_upto(double lambda_s, double lambda_h, int k);

struct LoadPmf {
  double load = 0.0;           // mean users per cell
  std::vector<double> values;  // P[N = n], n = 0..n_max

  double cdf(int n) const;
};

// Users-per-cell pmf under the Gamma(3.5) cell-size approximation.
// Computed by log-space ratio recurrence so large loads cannot overflow.
LoadPmf load_pmf(double load, int n_max);

// Smallest n_max whose tail mass is below `tail`.
int load_pmf_n_max(double load, double tail = 1e-9);

// integral_{zeta^{-2/alpha}}^inf du / (1 + u^{alpha/2}); closed form for
// alpha = 4, series-accelerated quadrature otherwise (alpha > 2).
double interference_integral(double zeta, double alpha);

// P[SIR > zeta] on tier k at activation fraction p (Slivnyak typical user).
double sir_ccdf_htc(double zeta, int k, double p_k_a, double alpha);

// Mean achievable rate per cell on tier k under backhaul cap rho (bps/Hz);
// rho may be +infinity, in which case p_k_a must be positive.
double mean_rate_tier(int k, int M, double p_k_a, double alpha, double rho);

// Downlink area spectral efficiency, bps/Hz/km^2.
double ase_htc(double lambda_s, double lambda_h, int M, double alpha,
               double rho);

struct MtcAnalytics {
  double active_cell_density = 0;      // cells/km^2 serving as uplink anchors
  double load_per_cell = 0;            // mean associated devices per cell
  double mean_supported_per_cell = 0;  // in [0, N_RB]
  double supported_density = 0;        // devices/km^2
  double mean_rate = 0;                // bps/Hz per supported device
  double ase = 0;                      // bps/Hz/km^2
};

// Uplink metrics: supported-device density, per-device rate and ASE.
MtcAnalytics mtc_analytics(double lambda_s, double lambda_h, double lambda_m,
                           double eta, int M, int n_rb, double alpha);

}  // namespace udnsim
