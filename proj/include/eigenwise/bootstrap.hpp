#pragma once

#include <cstdint>
#include <vector>

#include "eigenwise/eigen.hpp"
#include "eigenwise/estimators.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// Centered residual pool: the n(n+1)/2 upper-triangle entries (diagonal
// included) of A - P_hat with their average removed.
struct ResidualPool {
  std::vector<double> values;
  double mean_removed = 0.0;
};

ResidualPool residual_distribution(const SymmetricMatrix& A, const SymmetricMatrix& P_hat);

// Everything the per-draw kernels need, computed once from the observed
// matrix: the truncated eigenpairs, their rank-d reconstruction, the residual
// pool, and the plug-in bias column for the target eigenvector.
struct BootstrapSetup {
  TruncatedEigen eig;
  SymmetricMatrix P_hat;
  ResidualPool pool;
  std::vector<double> b_hat;
  int i = 0;
  int k = 0;
};

BootstrapSetup bootstrap_setup(const SymmetricMatrix& A, int p, int q, int i, int k);

enum class BootstrapScheme { residual, graph };

// Noise matrix of one residual draw: pool values resampled uniformly with
// replacement onto the upper triangle (entry counter i*n + j), symmetrized.
// Throws DegenerateError when the pool is identically zero.
SymmetricMatrix residual_noise_matrix(const ResidualPool& pool, int n, std::uint64_t seed);

// One studentized replicate.  Residual scheme refits P_hat + E*; graph scheme
// refits a Bernoulli(clip(P_hat, 0, 1)) adjacency draw.  The refit
// eigenvector is sign-aligned to the observed one and recentered by it:
//   T* = (sgn * u*_ik - u_ik - b_i) / s*_ik.
double residual_bootstrap_draw(const BootstrapSetup& s, std::uint64_t seed);
double parametric_graph_draw(const BootstrapSetup& s, std::uint64_t seed);

struct BootstrapCdf {
  std::vector<double> draws;  // sorted retained statistics (noise included)
  int requested = 0;
  int dropped = 0;
};

// Runs n_draws independent replicates (draw b is seeded from
// hash64({replicate_seed, boot tag, b}), so results do not depend on
// evaluation order or thread count) and drops the degenerate ones; more than
// 1% drops raises QualityError.  When sd > 0 each retained statistic gets an
// independent Gaussian smoothing offset sd * z_b drawn from the same draw
// seed, so the result is the sample of T* + w*.
BootstrapCdf bootstrap_cdf(const BootstrapSetup& s, BootstrapScheme scheme, int n_draws,
                           double sd, std::uint64_t replicate_seed);

}  // namespace eigenwise
