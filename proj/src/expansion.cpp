#include "eigenwise/expansion.hpp"

#include <cmath>
#include <string>

#include "eigenwise/errors.hpp"
#include "eigenwise/estimators.hpp"

namespace eigenwise {

namespace {

std::vector<double> noise_times_col(const SymmetricMatrix& E, const TruncatedEigen& eig, int k) {
  if (E.n() != eig.n) throw ShapeError("expansion: noise size disagrees with decomposition");
  std::vector<double> y(eig.n);
  E.matvec(eig.col(k), y.data());
  return y;
}

}  // namespace

std::vector<double> first_order_term(const TruncatedEigen& eig_P, const SymmetricMatrix& E,
                                     int k) {
  const auto Eu = noise_times_col(E, eig_P, k);
  return apply_weighted_projector(eig_P, k, -1.0, Eu.data(), eig_P.lambda[k]);
}

std::vector<double> second_order_term(const TruncatedEigen& eig_P, const SymmetricMatrix& E,
                                      int k) {
  const auto Eu = noise_times_col(E, eig_P, k);
  std::vector<double> EEu(eig_P.n);
  E.matvec(Eu.data(), EEu.data());
  return apply_weighted_projector(eig_P, k, -1.5, EEu.data(),
                                  eig_P.lambda[k] * eig_P.lambda[k]);
}

ExpansionTerms expansion_terms(const TruncatedEigen& eig_P, const SymmetricMatrix& E, int k) {
  ExpansionTerms out;
  out.k = k;
  out.psi = first_order_term(eig_P, E, k);
  out.qterm = second_order_term(eig_P, E, k);
  return out;
}

std::vector<double> cross_weight_vector(const TruncatedEigen& eig_P, int i, int k) {
  if (i < 0 || i >= eig_P.n) throw ConfigError("cross_weight_vector: row index out of range");
  require_eigengap(eig_P, k);
  const int n = eig_P.n;
  std::vector<double> v(n, 0.0);
  for (int m = 0; m < eig_P.d(); ++m) {
    const double w = (m == k) ? -eig_P.u(i, k)
                              : eig_P.lambda[m] * eig_P.u(i, m) /
                                    (eig_P.lambda[k] - eig_P.lambda[m]);
    const double* um = eig_P.col(m);
    for (int j = 0; j < n; ++j) v[j] += w * um[j];
  }
  return v;
}

AnglePrediction angle_expansion(const TruncatedEigen& eig_P, const SymmetricMatrix& E, int k,
                                int m) {
  if (k < 0 || k >= eig_P.p)
    throw ConfigError("angle_expansion: k must index a positive eigenvalue");
  if (m < 0 || m >= eig_P.d() || m == k)
    throw ConfigError("angle_expansion: m must differ from k and stay in range");
  require_eigengap(eig_P, k);
  const int n = eig_P.n;
  const auto Eu = noise_times_col(E, eig_P, k);
  std::vector<double> EEu(n);
  E.matvec(Eu.data(), EEu.data());
  const double lk = eig_P.lambda[k], lm = eig_P.lambda[m];

  AnglePrediction out;
  out.self_quadratic = -dot(eig_P.col(k), EEu.data(), n) / (2.0 * lk * lk);
  out.cross_linear = dot(eig_P.col(m), Eu.data(), n) / (lk - lm);
  out.cross_quadratic = dot(eig_P.col(m), EEu.data(), n) / (lk * (lk - lm));
  return out;
}

ExpansionReport expansion_report(const SymmetricMatrix& A, const TruncatedEigen& eig_P, int k) {
  const int n = eig_P.n;
  if (A.n() != n) throw ShapeError("expansion_report: matrix size disagrees");
  const auto Prec = estimate_P_hat(eig_P);
  SymmetricMatrix E(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) E.set(i, j, A(i, j) - Prec(i, j));

  const auto terms = expansion_terms(eig_P, E, k);
  const auto eig_A = truncated_spectral(A, eig_P.p, eig_P.q);
  const double s = dot(eig_A.col(k), eig_P.col(k), n) >= 0.0 ? 1.0 : -1.0;

  ExpansionReport rep;
  for (int i = 0; i < n; ++i) {
    const double d0 = eig_A.u(i, k) * s - eig_P.u(i, k);
    const double d1 = d0 - terms.psi[i];
    const double d2 = d1 - terms.qterm[i];
    rep.r0 = std::fmax(rep.r0, std::fabs(d0));
    rep.r1 = std::fmax(rep.r1, std::fabs(d1));
    rep.r2 = std::fmax(rep.r2, std::fabs(d2));
  }
  return rep;
}

}  // namespace eigenwise
