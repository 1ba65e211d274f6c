#pragma once

#include <vector>

#include "eigenwise/eigen.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// Leading terms of the entrywise eigenvector perturbation series around the
// signal decomposition: psi is linear in the noise, qterm is linear in its
// square.  Verification-side machinery for the estimators.
struct ExpansionTerms {
  int k = 0;
  std::vector<double> psi;
  std::vector<double> qterm;
};

// psi_k = (I - u_k u_k^T + sum_{m != k} lambda_m/(lambda_k - lambda_m)
//          u_m u_m^T) E u_k / lambda_k
std::vector<double> first_order_term(const TruncatedEigen& eig_P, const SymmetricMatrix& E,
                                     int k);

// q_k = (I - 3/2 u_k u_k^T + sum_{m != k} lambda_m/(lambda_k - lambda_m)
//        u_m u_m^T) E^2 u_k / lambda_k^2, with E^2 u_k formed as E (E u_k).
std::vector<double> second_order_term(const TruncatedEigen& eig_P, const SymmetricMatrix& E,
                                      int k);

ExpansionTerms expansion_terms(const TruncatedEigen& eig_P, const SymmetricMatrix& E, int k);

// v_ik = -u_ik u_k + sum_{m != k} lambda_m u_im/(lambda_k - lambda_m) u_m,
// the row-i weighting so that psi_k[i] = (e_i + v_ik)^T E u_k / lambda_k.
std::vector<double> cross_weight_vector(const TruncatedEigen& eig_P, int i, int k);

// Predicted inner products of the estimated k-th eigenvector against the true
// frame, split by noise order so parity can be asserted.
struct AnglePrediction {
  double self_quadratic = 0.0;   // prediction for sgn * (u_k . u_hat_k) - 1
  double cross_linear = 0.0;     // noise-linear part of sgn * (u_m . u_hat_k)
  double cross_quadratic = 0.0;  // squared-noise part of the same
};

// Requires k among the positive block (k < p) and m != k.
AnglePrediction angle_expansion(const TruncatedEigen& eig_P, const SymmetricMatrix& E, int k,
                                int m);

// Sup-norm residuals of the observed k-th eigenvector against the series:
// r0 drops both terms, r1 keeps psi, r2 keeps psi and qterm.  The noise is
// recovered as A minus the reconstruction of eig_P.
struct ExpansionReport {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

ExpansionReport expansion_report(const SymmetricMatrix& A, const TruncatedEigen& eig_P, int k);

}  // namespace eigenwise
