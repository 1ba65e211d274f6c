#include "eigenwise/estimators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "eigenwise/errors.hpp"

namespace eigenwise {

namespace {

void check_column(const TruncatedEigen& eig, int k, const char* who) {
  if (k < 0 || k >= eig.d())
    throw ConfigError(std::string(who) + ": column " + std::to_string(k) + " outside [0," +
                      std::to_string(eig.d()) + ")");
}

}  // namespace

void require_eigengap(const TruncatedEigen& eig, int k) {
  check_column(eig, k, "require_eigengap");
  const double lk = eig.lambda[k];
  if (lk == 0.0) throw EigengapError("require_eigengap: lambda_k is zero");
  const double floor = 1e-10 * std::fabs(lk);
  for (int m = 0; m < eig.d(); ++m) {
    if (m == k) continue;
    if (std::fabs(lk - eig.lambda[m]) < floor)
      throw EigengapError("require_eigengap: |lambda_" + std::to_string(k) + " - lambda_" +
                          std::to_string(m) + "| = " +
                          std::to_string(std::fabs(lk - eig.lambda[m])) +
                          " below relative floor " + std::to_string(floor));
  }
}

std::vector<double> apply_weighted_projector(const TruncatedEigen& eig, int k, double ck,
                                             const double* x, double denom) {
  check_column(eig, k, "apply_weighted_projector");
  require_eigengap(eig, k);
  const int n = eig.n, d = eig.d();
  const double lk = eig.lambda[k];

  // coef_m = weight_m * (u_m . x); the result is (x + U coef) / denom.
  std::vector<double> coef(d);
  for (int m = 0; m < d; ++m) {
    const double ip = dot(eig.col(m), x, n);
    coef[m] = (m == k) ? ck * ip : eig.lambda[m] / (lk - eig.lambda[m]) * ip;
  }
  std::vector<double> y(x, x + n);
  for (int m = 0; m < d; ++m) {
    const double c = coef[m];
    const double* um = eig.col(m);
    for (int i = 0; i < n; ++i) y[i] += c * um[i];
  }
  const double inv = 1.0 / denom;
  for (int i = 0; i < n; ++i) y[i] *= inv;
  return y;
}

SymmetricMatrix estimate_P_hat(const TruncatedEigen& eig) {
  if (eig.d() == 0) throw ConfigError("estimate_P_hat: no retained eigenpairs");
  const int n = eig.n, d = eig.d();
  SymmetricMatrix P(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) s += eig.lambda[m] * eig.u(i, m) * eig.u(j, m);
      P.set(i, j, s);
    }
  return P;
}

DiagonalEstimate estimate_D_hat(const SymmetricMatrix& A, const SymmetricMatrix& P_hat) {
  const int n = A.n();
  if (P_hat.n() != n)
    throw ShapeError("estimate_D_hat: matrix sizes " + std::to_string(n) + " vs " +
                     std::to_string(P_hat.n()));
  DiagonalEstimate out;
  out.diag.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* ai = A.row(i);
    const double* pi = P_hat.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = ai[j] - pi[j];
      s += r * r;
    }
    out.diag[i] = s;
  }
  return out;
}

BiasVector bias_vector(const TruncatedEigen& eig, const DiagonalEstimate& Ddiag, int k,
                       BiasSource source) {
  check_column(eig, k, "bias_vector");
  const int n = eig.n;
  if (static_cast<int>(Ddiag.diag.size()) != n)
    throw ShapeError("bias_vector: diagonal length " + std::to_string(Ddiag.diag.size()) +
                     " vs n=" + std::to_string(n));
  std::vector<double> x(n);
  const double* uk = eig.col(k);
  for (int i = 0; i < n; ++i) x[i] = Ddiag.diag[i] * uk[i];
  BiasVector out;
  out.k = k;
  out.source = source;
  out.b = apply_weighted_projector(eig, k, -1.5, x.data(), eig.lambda[k] * eig.lambda[k]);
  return out;
}

std::vector<double> bias_correct(const TruncatedEigen& eig, const DiagonalEstimate& Ddiag,
                                 int k) {
  const BiasVector bv = bias_vector(eig, Ddiag, k);
  std::vector<double> out(eig.col(k), eig.col(k) + eig.n);
  for (int i = 0; i < eig.n; ++i) out[i] -= bv.b[i];
  return out;
}

std::vector<double> variance_plugin_column(const SymmetricMatrix& A,
                                           const SymmetricMatrix& P_hat,
                                           const TruncatedEigen& eig, int k) {
  check_column(eig, k, "variance_plugin");
  const int n = eig.n;
  if (A.n() != n || P_hat.n() != n) throw ShapeError("variance_plugin: matrix sizes disagree");
  const double lk = eig.lambda[k];
  if (lk == 0.0) throw DegenerateError("variance_plugin: lambda_k is zero");
  const double* uk = eig.col(k);
  std::vector<double> u2(n);
  for (int j = 0; j < n; ++j) u2[j] = uk[j] * uk[j];
  std::vector<double> out(n);
  const double inv = 1.0 / (lk * lk);
  for (int i = 0; i < n; ++i) {
    const double* ai = A.row(i);
    const double* pi = P_hat.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double r = ai[j] - pi[j];
      s += r * r * u2[j];
    }
    out[i] = s * inv;
  }
  return out;
}

double variance_plugin(const SymmetricMatrix& A, const SymmetricMatrix& P_hat,
                       const TruncatedEigen& eig, int i, int k) {
  check_column(eig, k, "variance_plugin");
  const int n = eig.n;
  if (A.n() != n || P_hat.n() != n) throw ShapeError("variance_plugin: matrix sizes disagree");
  if (i < 0 || i >= n) throw ConfigError("variance_plugin: row index out of range");
  const double lk = eig.lambda[k];
  if (lk == 0.0) throw DegenerateError("variance_plugin: lambda_k is zero");
  const double* uk = eig.col(k);
  const double* ai = A.row(i);
  const double* pi = P_hat.row(i);
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r = ai[j] - pi[j];
    s += r * r * (uk[j] * uk[j]);  // grouping matches the column path bitwise
  }
  return s / (lk * lk);
}

std::vector<double> variance_population_column(const SymmetricMatrix& sigma2,
                                               const TruncatedEigen& eig, int k) {
  check_column(eig, k, "variance_population");
  const int n = eig.n;
  if (sigma2.n() != n) throw ShapeError("variance_population: matrix sizes disagree");
  const double lk = eig.lambda[k];
  if (lk == 0.0) throw DegenerateError("variance_population: lambda_k is zero");
  const double* uk = eig.col(k);
  std::vector<double> u2(n);
  for (int j = 0; j < n; ++j) u2[j] = uk[j] * uk[j];
  std::vector<double> out(n);
  const double inv = 1.0 / (lk * lk);
  for (int i = 0; i < n; ++i) {
    const double* si = sigma2.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += si[j] * u2[j];
    out[i] = s * inv;
  }
  return out;
}

double variance_population(const SymmetricMatrix& sigma2, const TruncatedEigen& eig, int i,
                           int k) {
  check_column(eig, k, "variance_population");
  if (sigma2.n() != eig.n) throw ShapeError("variance_population: matrix sizes disagree");
  if (i < 0 || i >= eig.n) throw ConfigError("variance_population: row index out of range");
  const double lk = eig.lambda[k];
  if (lk == 0.0) throw DegenerateError("variance_population: lambda_k is zero");
  const double* uk = eig.col(k);
  const double* si = sigma2.row(i);
  double s = 0.0;
  for (int j = 0; j < eig.n; ++j) s += si[j] * (uk[j] * uk[j]);
  return s / (lk * lk);
}

double studentize(double u_hat_entry, double u_entry, double b_entry, double s, double sign) {
  if (!(s > 0.0)) throw DegenerateError("studentize: scale " + std::to_string(s) + " not positive");
  return (u_hat_entry * sign - u_entry - b_entry) / s;
}

DenoisingFit denoising_fit(const RectMatrix& X, int r) {
  const int p1 = X.rows(), p2 = X.cols();
  if (r < 1 || r > std::min(p1, p2))
    throw ConfigError("denoising_fit: rank " + std::to_string(r) + " outside [1,min(" +
                      std::to_string(p1) + "," + std::to_string(p2) + ")]");

  // Eigendecompose the smaller Gram matrix; recover the other side by one
  // multiplication.  Kept independent of the symmetric-dilation route so the
  // two can cross-validate.
  DenoisingFit fit;
  fit.p1 = p1;
  fit.p2 = p2;
  fit.r = r;
  fit.U.assign(static_cast<std::size_t>(p1) * r, 0.0);
  fit.V.assign(static_cast<std::size_t>(p2) * r, 0.0);

  const bool left_small = p1 <= p2;
  const int g = left_small ? p1 : p2;
  SymmetricMatrix G(g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      double s = 0.0;
      if (left_small)
        for (int t = 0; t < p2; ++t) s += X(i, t) * X(j, t);
      else
        for (int t = 0; t < p1; ++t) s += X(t, i) * X(t, j);
      G.set(i, j, s);
    }
  TruncatedEigen eg;
  try {
    eg = truncated_spectral(G, r, 0);
  } catch (const RankError& e) {
    throw RankError(std::string("denoising_fit: fewer than r positive singular values (") +
                    e.what() + ")");
  }
  fit.sigma.resize(r);
  for (int k = 0; k < r; ++k) fit.sigma[k] = std::sqrt(eg.lambda[k]);
  for (int k = 0; k + 1 < r; ++k)
    if (fit.sigma[k] - fit.sigma[k + 1] < 1e-10 * fit.sigma[0])
      throw EigengapError("denoising_fit: singular values " + std::to_string(k) + "," +
                          std::to_string(k + 1) + " closer than 1e-10 * sigma_1");

  for (int k = 0; k < r; ++k) {
    double* u = fit.U.data() + static_cast<std::size_t>(k) * p1;
    double* v = fit.V.data() + static_cast<std::size_t>(k) * p2;
    const double inv = 1.0 / fit.sigma[k];
    if (left_small) {
      for (int i = 0; i < p1; ++i) u[i] = eg.u(i, k);
      for (int j = 0; j < p2; ++j) {
        double s = 0.0;
        for (int i = 0; i < p1; ++i) s += X(i, j) * u[i];
        v[j] = s * inv;
      }
    } else {
      for (int j = 0; j < p2; ++j) v[j] = eg.u(j, k);
      for (int i = 0; i < p1; ++i) {
        double s = 0.0;
        for (int j = 0; j < p2; ++j) s += X(i, j) * v[j];
        u[i] = s * inv;
      }
    }
  }

  fit.M_hat = RectMatrix(p1, p2);
  double rss = 0.0;
  for (int i = 0; i < p1; ++i)
    for (int j = 0; j < p2; ++j) {
      double s = 0.0;
      for (int k = 0; k < r; ++k) s += fit.sigma[k] * fit.u_col(k)[i] * fit.v_col(k)[j];
      fit.M_hat(i, j) = s;
      const double rr = X(i, j) - s;
      rss += rr * rr;
    }
  fit.rho_hat = rss / (static_cast<double>(p1) * p2);
  return fit;
}

DenoisingEntry denoising_entry(const DenoisingFit& fit, const RectMatrix& X, int i, int k,
                               double rho) {
  if (X.rows() != fit.p1 || X.cols() != fit.p2)
    throw ShapeError("denoising_entry: observation shape disagrees with fit");
  if (i < 0 || i >= fit.p1) throw ConfigError("denoising_entry: row index out of range");
  if (k < 0 || k >= fit.r) throw ConfigError("denoising_entry: component index out of range");

  const double* v = fit.v_col(k);
  const double sk2 = fit.sigma[k] * fit.sigma[k];
  double tau2 = 0.0, rnorm2 = 0.0, xnorm2 = 0.0;
  for (int j = 0; j < fit.p2; ++j) {
    const double rr = X(i, j) - fit.M_hat(i, j);
    tau2 += rr * rr * v[j] * v[j];
    rnorm2 += rr * rr;
    xnorm2 += X(i, j) * X(i, j);
  }
  tau2 /= sk2;
  // A residual row at rounding level means the rank-r fit explains row i
  // exactly and the plug-in scale carries no information.
  if (tau2 <= 0.0 || rnorm2 <= 1e-24 * xnorm2)
    throw DegenerateError("denoising_entry: residual row " + std::to_string(i) +
                          " is numerically zero");

  DenoisingEntry out;
  out.u_hat = fit.u_col(k)[i];
  out.tau2 = tau2;
  const double rho_eff = rho < 0.0 ? fit.rho_hat : rho;
  out.b = -rho_eff * static_cast<double>(fit.p1) * out.u_hat / (2.0 * sk2);
  return out;
}

}  // namespace eigenwise
