#include "udnsim/radio.hpp"

#include <algorithm>
#include <stdexcept>

namespace udnsim {

CellRate rate_htc_cell(std::span<const double> user_sirs,
                       const RadioParams& params) {
  if (user_sirs.empty()) {
    throw std::invalid_argument("rate_htc_cell: cell must serve at least one user");
  }
  CellRate out;
  out.per_user.resize(user_sirs.size());
  const double share = 1.0 / (static_cast<double>(user_sirs.size()) *
                              params.multicell_size);
  for (std::size_t i = 0; i < user_sirs.size(); ++i) {
    out.per_user[i] =
        share * spectral_efficiency(user_sirs[i], params.max_spectral_efficiency);
    out.uncapped += out.per_user[i];
  }
  out.capped = std::min(out.uncapped, params.rho);
  if (out.capped < out.uncapped && out.uncapped > 0.0) {
    const double scale = out.capped / out.uncapped;
    for (double& r : out.per_user) r *= scale;
  }
  return out;
}

double rate_mtc(double sir, int n_rb, double max_spectral_efficiency) {
  if (n_rb < 1) throw std::invalid_argument("rate_mtc: N_RB must be >= 1");
  return spectral_efficiency(sir, max_spectral_efficiency) / n_rb;
}

}  // namespace udnsim
