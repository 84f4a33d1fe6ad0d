#include "udnsim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace udnsim {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWeightsKronrod[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWeightsGauss[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
  double value;
  double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a,
                   double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double fl = f(c - h * kNodes[i]);
    const double fr = f(c + h * kNodes[i]);
    const double both = (i == 7) ? fl : fl + fr;
    kron += kWeightsKronrod[i] * both;
    if (i % 2 == 1) gauss += kWeightsGauss[i / 2] * both;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double tol, int depth, int max_depth, IntegrationResult& out) {
  const PanelEstimate est = gk15(f, a, b);
  if (est.error <= tol || depth >= max_depth) {
    out.value += est.value;
    out.error_estimate += est.error;
    if (est.error > tol) out.converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f, double a,
                            double b, double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be > 0");
  if (!(a <= b)) throw std::invalid_argument("integrate: bounds must be ordered");
  IntegrationResult out;
  if (a == b) return out;
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

IntegrationResult integrate_to_infinity(const std::function<double(double)>& f,
                                        double a, double abs_tol,
                                        int max_depth) {
  // u = a + t/(1-t), du = dt/(1-t)^2, t in [0, 1). Kronrod nodes are interior
  // so the t = 1 endpoint is never evaluated.
  auto g = [&f, a](double t) {
    const double om = 1.0 - t;
    return f(a + t / om) / (om * om);
  };
  return integrate(g, 0.0, 1.0, abs_tol, max_depth);
}

double sum_series(const std::function<double(std::int64_t)>& term,
                  std::int64_t start, double rel_tol, std::int64_t max_terms) {
  double sum = 0.0;
  double prev = -1.0;
  for (std::int64_t n = start; n - start < max_terms; ++n) {
    const double t = term(n);
    if (t < 0.0) throw std::invalid_argument("sum_series: negative term");
    sum += t;
    const bool decreasing = prev >= 0.0 && t <= prev;
    if (decreasing && (t < rel_tol * sum || t == 0.0)) break;
    prev = t;
  }
  return sum;
}

}  // namespace udnsim
