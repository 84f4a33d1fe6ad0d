// Shared 1-D adaptive integration (Gauss-Kronrod 7-15 with recursive
// bisection) and non-negative series summation.
#pragma once

#include <cstdint>
#include <functional>

namespace udnsim {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;  // false when max depth was hit somewhere
};

// Integrates f over [a, b] to the requested absolute tolerance. Panels are
// split deterministically (left before right) so results do not depend on
// evaluation order.
IntegrationResult integrate(const std::function<double(double)>& f, double a,
                            double b, double abs_tol = 1e-10,
                            int max_depth = 40);

// Semi-infinite domain [a, inf) via the substitution u = a + t/(1-t).
IntegrationResult integrate_to_infinity(const std::function<double(double)>& f,
                                        double a, double abs_tol = 1e-10,
                                        int max_depth = 40);

// Sums non-negative terms term(start), term(start+1), ... until the running
// term drops below rel_tol * partial_sum on the decreasing side, or until
// max_terms. Terms may rise before they fall (pmf-style series).
double sum_series(const std::function<double(std::int64_t)>& term,
                  std::int64_t start, double rel_tol = 1e-12,
                  std::int64_t max_terms = 1 << 22);

}  // namespace udnsim
