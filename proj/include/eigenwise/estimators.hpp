#pragma once

#include <vector>

#include "eigenwise/eigen.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// Diagonal of the (estimated or population) second-moment matrix of the noise,
// row sums of squared residuals: diag[i] = sum_j r_ij^2.
struct DiagonalEstimate {
  std::vector<double> diag;
};

enum class BiasSource { population, plugin };

struct BiasVector {
  std::vector<double> b;
  int k = 0;
  BiasSource source = BiasSource::plugin;
};

// EigengapError when lambda_k == 0 or some |lambda_k - lambda_m| falls below
// 1e-10 * |lambda_k|: every spectral-weighted operation shares this floor.
void require_eigengap(const TruncatedEigen& eig, int k);

// Applies (I + ck * u_k u_k^T + sum_{m != k} lambda_m/(lambda_k - lambda_m)
// u_m u_m^T) to x and divides by denom.  Never forms an n x n matrix: the
// result is x plus a weighted combination of the d retained columns.  Shared
// backend of the bias estimator and the expansion terms.
// Throws EigengapError when lambda_k == 0 or |lambda_k - lambda_m| <
// 1e-10*|lambda_k| for some m != k.
std::vector<double> apply_weighted_projector(const TruncatedEigen& eig, int k, double ck,
                                             const double* x, double denom);

// P_hat = U diag(lambda) U^T from the retained eigenpairs, symmetrized.
// ConfigError if the decomposition retains no eigenpairs.
SymmetricMatrix estimate_P_hat(const TruncatedEigen& eig);

// diag[i] = sum_j (A_ij - P_hat_ij)^2.  ShapeError on size mismatch.
DiagonalEstimate estimate_D_hat(const SymmetricMatrix& A, const SymmetricMatrix& P_hat);

// b = (I - 3/2 u_k u_k^T + sum_{m != k} lambda_m/(lambda_k - lambda_m)
// u_m u_m^T) (Ddiag .* u_k) / lambda_k^2.  With (eig of A, D_hat) this is the
// plug-in bias; with (eig of P, population D) the population bias.
BiasVector bias_vector(const TruncatedEigen& eig, const DiagonalEstimate& Ddiag, int k,
                       BiasSource source = BiasSource::plugin);

// u_k - b_k; deliberately not re-normalized.
std::vector<double> bias_correct(const TruncatedEigen& eig, const DiagonalEstimate& Ddiag,
                                 int k);

// s2_ik = sum_j (A_ij - P_hat_ij)^2 u_jk^2 / lambda_k^2.  DegenerateError on
// lambda_k == 0.  The column form evaluates every i in one pass.
double variance_plugin(const SymmetricMatrix& A, const SymmetricMatrix& P_hat,
                       const TruncatedEigen& eig, int i, int k);
std::vector<double> variance_plugin_column(const SymmetricMatrix& A,
                                           const SymmetricMatrix& P_hat,
                                           const TruncatedEigen& eig, int k);

// Population version: s2_ik = sum_j sigma2_ij u_jk^2 / lambda_k^2.
double variance_population(const SymmetricMatrix& sigma2, const TruncatedEigen& eig, int i,
                           int k);
std::vector<double> variance_population_column(const SymmetricMatrix& sigma2,
                                               const TruncatedEigen& eig, int k);

// T = (u_hat * sign - u - b) / s; DegenerateError unless s > 0.
double studentize(double u_hat_entry, double u_entry, double b_entry, double s, double sign);

// ---------------------------------------------------------------------------
// Rectangular denoising: rank-r truncated SVD of the observation and the
// entrywise inference pieces for the left singular vectors.

struct DenoisingFit {
  int p1 = 0, p2 = 0, r = 0;
  std::vector<double> sigma;  // descending, positive
  std::vector<double> U;      // p1 x r, column-major
  std::vector<double> V;      // p2 x r, column-major
  RectMatrix M_hat;           // sum_k sigma_k u_k v_k^T
  double rho_hat = 0.0;       // mean squared residual over all entries

  const double* u_col(int k) const { return U.data() + static_cast<std::size_t>(k) * p1; }
  const double* v_col(int k) const { return V.data() + static_cast<std::size_t>(k) * p2; }
};

// SVD route: eigendecomposition of the smaller Gram matrix (X X^T or X^T X),
// the other side recovered by multiplication.  RankError if fewer than r
// positive singular values survive; EigengapError if consecutive retained
// singular values are closer than 1e-10 * sigma_1.
DenoisingFit denoising_fit(const RectMatrix& X, int r);

struct DenoisingEntry {
  double u_hat = 0.0;  // entry (i,k) of the left singular vector estimate
  double tau2 = 0.0;   // plug-in variance sum_j (X_ij - M_hat_ij)^2 v_jk^2 / sigma_k^2
  double b = 0.0;      // bias  -rho * p1 * u_hat_ik / (2 sigma_k^2)
};

// rho < 0 selects the residual-based plug-in fit.rho_hat.  DegenerateError
// when the row residual is numerically zero (rank-r fit explains row i
// exactly), since tau2 then carries no information.
DenoisingEntry denoising_entry(const DenoisingFit& fit, const RectMatrix& X, int i, int k,
                               double rho = -1.0);

}  // namespace eigenwise
