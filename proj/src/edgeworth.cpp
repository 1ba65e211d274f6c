#include "eigenwise/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenwise/errors.hpp"
#include "eigenwise/estimators.hpp"
#include "eigenwise/normal.hpp"

namespace eigenwise {

std::pair<double, double> std_normal(double x) { return {normal_cdf(x), normal_pdf(x)}; }

double kappa_sum(const double* third_row, const double* u, int n, double s, double lambda) {
  if (!(s > 0.0)) throw DegenerateError("kappa_sum: scale " + std::to_string(s) + " not positive");
  if (lambda == 0.0) throw DegenerateError("kappa_sum: lambda is zero");
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += third_row[j] * u[j] * u[j] * u[j];
  const double sl = s * lambda;
  return acc / (sl * sl * sl);
}

double edgeworth_cdf(double x, double kappa) {
  if (kappa == 0.0) return normal_cdf(x);
  return normal_cdf(x) + (2.0 * x * x + 1.0) / 6.0 * normal_pdf(x) * kappa;
}

std::vector<double> EdgeworthCurve::critical_points() const {
  if (kappa == 0.0) return {};
  const double k = kappa;
  const auto cubic = [k](double x) { return (2.0 * k * x * x - 3.0 * k) * x - 6.0; };

  // The cubic's own stationary points sit at +-1/sqrt(2); each of the three
  // monotone pieces holds at most one root, found by bisection.
  const double s = 0.70710678118654752440;
  const double bound = 1.0 + std::max(3.0 * std::fabs(k), 6.0) / (2.0 * std::fabs(k));
  const double edges[4] = {-bound, -s, s, bound};
  std::vector<double> roots;
  for (int t = 0; t < 3; ++t) {
    double lo = edges[t], hi = edges[t + 1];
    double flo = cubic(lo), fhi = cubic(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (fhi == 0.0 || flo * fhi > 0.0) continue;  // hi == 0 handled by the next piece
    for (int it = 0; it < 200 && lo < hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = cubic(mid);
      if (fmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((flo < 0.0) != (fmid < 0.0)) {
        hi = mid;
      } else {
        lo = mid;
        flo = fmid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a)); }),
              roots.end());
  roots.erase(std::remove_if(roots.begin(), roots.end(),
                             [](double x) { return std::fabs(x) > 40.0; }),
              roots.end());
  return roots;
}

EdgeworthCurve empirical_edgeworth(const SymmetricMatrix& A, const SymmetricMatrix& P_hat,
                                   const TruncatedEigen& eig, int i, int k) {
  const double s2 = variance_plugin(A, P_hat, eig, i, k);
  if (!(s2 > 0.0))
    throw DegenerateError("empirical_edgeworth: plug-in variance vanished at row " +
                          std::to_string(i));
  const double s = std::sqrt(s2);
  const double lk = eig.lambda[k];
  const double* uk = eig.col(k);
  const double* ai = A.row(i);
  const double* pi = P_hat.row(i);
  double acc = 0.0;
  for (int j = 0; j < eig.n; ++j) {
    const double r = ai[j] - pi[j];
    acc += r * r * r * uk[j] * uk[j] * uk[j];
  }
  const double sl = s * lk;
  return EdgeworthCurve{acc / (sl * sl * sl)};
}

SmootherScale smoother_scale(SmootherKind kind, double beta, double rho, int n, double tau) {
  if (n < 2) throw ConfigError("smoother_scale: n must be >= 2");
  if (!(rho > 0.0)) throw ConfigError("smoother_scale: rho must be positive");
  if (!(tau >= 0.0)) throw ConfigError("smoother_scale: tau must be nonnegative");
  if (!(beta >= 0.0)) throw ConfigError("smoother_scale: beta must be nonnegative");
  const double ln = std::log(static_cast<double>(n));
  SmootherScale out;
  if (kind == SmootherKind::general)
    out.sd = tau * beta * std::sqrt(ln) / std::sqrt(n * rho * rho * rho);
  else
    out.sd = tau * std::sqrt(ln / (n * rho));
  return out;
}

}  // namespace eigenwise
