#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eigenwise/eigen.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

// A signal matrix with its exact (analytic) truncated decomposition.
struct ModelInstance {
  SymmetricMatrix P;
  TruncatedEigen eig;
  std::optional<NoiseSpec> noise;
  int n() const { return P.n(); }
  int d() const { return eig.d(); }
};

// Weighted two-block model: P_ij = a*Delta/n within blocks, b*Delta/n across,
// blocks of size n/2.  Analytic eigenpairs: lambda = (Delta(a+b)/2,
// Delta(a-b)/2), u1 = 1/sqrt(n), u2 = blockwise-signed 1/sqrt(n).
ModelInstance build_sbm(int n, double a, double b, double delta);

// Rank-one spike P = v v^T with v = (hi,...,hi, lo,...,lo) (halves), so
// lambda_1 = n(hi^2+lo^2)/2 and u1 = v/||v||.  With hi = lo = c this is the
// constant matrix with entries c^2.
ModelInstance build_rank_one_blocks(int n, double hi, double lo);

// Rectangular low-rank signal plus i.i.d. noise for the denoising problem.
struct DenoisingModel {
  int p1 = 0, p2 = 0, r = 0;
  RectMatrix M;
  std::vector<double> sigma;  // strictly decreasing, positive
  std::vector<double> U;      // p1 x r, column-major
  std::vector<double> V;      // p2 x r, column-major
  double rho = 0.0;           // per-entry noise variance
  NoiseSpec noise;            // centered exponential by default

  const double* u_col(int k) const { return U.data() + static_cast<std::size_t>(k) * p1; }
  const double* v_col(int k) const { return V.data() + static_cast<std::size_t>(k) * p2; }

  DenoisingModel() : noise(NoiseSpec::centered_exponential(0.5)) {}
};

// Singular vectors are drawn from a seeded Gaussian frame, orthonormalized,
// and accepted only if delocalized (max entry <= 4/sqrt(dim)); at most 100
// retries, then ConfigError.
DenoisingModel build_denoising_model(int p1, int p2, int r, std::vector<double> sigmas,
                                     double rho, std::uint64_t seed);

// X = M + Y with Y_ij i.i.d. from the model's noise law (counter i*p2+j).
RectMatrix sample_denoising_obs(const DenoisingModel& model, std::uint64_t seed);

}  // namespace eigenwise
