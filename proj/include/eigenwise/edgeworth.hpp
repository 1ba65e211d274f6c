#pragma once

#include <utility>
#include <vector>

#include "eigenwise/eigen.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// (Phi(x), phi(x)); Phi evaluated through the rational complementary error
// function with absolute error below 1e-12.
std::pair<double, double> std_normal(double x);

// kappa = sum_j third_row[j] * u[j]^3 / (s^3 lambda^3).  DegenerateError
// unless s > 0 and lambda != 0.
double kappa_sum(const double* third_row, const double* u, int n, double s, double lambda);

// Phi(x) + ((2x^2 + 1)/6) phi(x) kappa.
double edgeworth_cdf(double x, double kappa);

// Skew-corrected normal CDF approximation.  May be locally non-monotone for
// large |kappa|; downstream distance code treats it as a plain curve (no
// monotone rearrangement).
struct EdgeworthCurve {
  double kappa = 0.0;
  double operator()(double x) const { return edgeworth_cdf(x, kappa); }
  // Real stationary points of the curve, i.e. roots of
  // 2*kappa*x^3 - 3*kappa*x - 6 = 0, sorted ascending; empty when kappa == 0.
  // Roots beyond |x| > 40 are dropped (phi underflows to zero there, so they
  // cannot move a sup-distance).  Sup-distance evaluation adds these to its
  // candidate set so non-monotone curves are handled exactly.
  std::vector<double> critical_points() const;
};

// Plug-in curve from fit residuals of row i:
// kappa_hat = sum_j (A_ij - P_hat_ij)^3 u_jk^3 / (s_ik^3 lambda_k^3), with the
// plug-in s_ik from the same residual row.  DegenerateError when that scale
// vanishes.
EdgeworthCurve empirical_edgeworth(const SymmetricMatrix& A, const SymmetricMatrix& P_hat,
                                   const TruncatedEigen& eig, int i, int k);

enum class SmootherKind { general, graph };

// Standard deviation of the Gaussian perturbation injected to smooth lattice-
// valued statistics.
struct SmootherScale {
  double sd = 0.0;
};

// general: tau * beta * sqrt(log n) / sqrt(n rho^3)
// graph:   tau * sqrt(log n / (n rho))
// ConfigError unless n >= 2, rho > 0, tau >= 0, beta >= 0.
SmootherScale smoother_scale(SmootherKind kind, double beta, double rho, int n, double tau);

}  // namespace eigenwise
