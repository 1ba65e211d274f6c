#pragma once

#include <vector>

#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// All eigenpairs of a symmetric matrix, eigenvalues in decreasing order.
// Eigenvectors are column-major: vector k occupies vectors[k*n .. k*n+n-1].
// Column signs are deterministic: the largest-magnitude entry (ties broken by
// lowest index) is made positive.
struct FullEigh {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
  const double* col(int k) const { return vectors.data() + static_cast<std::size_t>(k) * n; }
};

FullEigh full_eigh(const SymmetricMatrix& A);

// Leading spectral truncation: p largest-positive eigenpairs followed by the
// q most-negative ones, each block in decreasing eigenvalue order, so the
// lambda vector as a whole is decreasing.
struct TruncatedEigen {
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<double> lambda;  // size p+q
  std::vector<double> U;       // column-major n x (p+q)

  int d() const { return p + q; }
  double u(int i, int k) const { return U[static_cast<std::size_t>(k) * n + i]; }
  const double* col(int k) const { return U.data() + static_cast<std::size_t>(k) * n; }
};

TruncatedEigen truncated_spectral(const SymmetricMatrix& A, int p, int q);

// Packs an already-available analytic decomposition (columns must be
// orthonormal; not revalidated here).
TruncatedEigen make_truncated(int n, int p, int q, std::vector<double> lambda,
                              std::vector<double> U);

// Per-column alignment signs sgn(ref_k . est_k); a zero inner product maps
// to +1.
struct SignAlignment {
  std::vector<double> sign;
};

SignAlignment align_signs(const TruncatedEigen& ref, const TruncatedEigen& est);

// [[0, M], [M^T, 0]]
SymmetricMatrix symmetric_dilation(const RectMatrix& M);

// min over retained eigenvalues of (distance to zero, distance to neighbours);
// input must be decreasing.
double eigengap(const std::vector<double>& lambda);

}  // namespace eigenwise
