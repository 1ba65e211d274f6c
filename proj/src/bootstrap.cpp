#include <algorithm>
#include <cmath>
#include <string>

#include "eigenwise/bootstrap.hpp"
#include "eigenwise/errors.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/normal.hpp"
#include "eigenwise/rng.hpp"

namespace eigenwise {

ResidualPool residual_distribution(const SymmetricMatrix& A, const SymmetricMatrix& P_hat) {
  if (A.n() != P_hat.n()) throw ShapeError("residual_distribution: dimension mismatch");
  const int n = A.n();
  ResidualPool pool;
  pool.values.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double r = A(i, j) - P_hat(i, j);
      pool.values.push_back(r);
      sum += r;
    }
  pool.mean_removed = sum / static_cast<double>(pool.values.size());
  for (double& v : pool.values) v -= pool.mean_removed;
  return pool;
}

BootstrapSetup bootstrap_setup(const SymmetricMatrix& A, int p, int q, int i, int k) {
  BootstrapSetup s;
  s.eig = truncated_spectral(A, p, q);
  if (i < 0 || i >= A.n()) throw ConfigError("bootstrap_setup: entry index out of range");
  if (k < 0 || k >= s.eig.d()) throw ConfigError("bootstrap_setup: column index out of range");
  s.P_hat = estimate_P_hat(s.eig);
  s.pool = residual_distribution(A, s.P_hat);
  const DiagonalEstimate D = estimate_D_hat(A, s.P_hat);
  s.b_hat = bias_vector(s.eig, D, k, BiasSource::plugin).b;
  s.i = i;
  s.k = k;
  return s;
}

SymmetricMatrix residual_noise_matrix(const ResidualPool& pool, int n, std::uint64_t seed) {
  const std::uint64_t m = pool.values.size();
  if (m == 0) throw DegenerateError("residual pool is empty");
  double amax = 0.0;
  for (const double v : pool.values) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) throw DegenerateError("residual pool is identically zero");
  const CounterRng rng(seed, stream::resample_index);
  SymmetricMatrix E(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const std::uint64_t c = static_cast<std::uint64_t>(i) * n + j;
      E.set(i, j, pool.values[rng.below(c, m)]);
    }
  return E;
}

namespace {

// Refit the draw and studentize its target entry against the observed fit.
double studentized_replicate(const BootstrapSetup& s, const SymmetricMatrix& A_star) {
  const TruncatedEigen refit = truncated_spectral(A_star, s.eig.p, s.eig.q);
  const SymmetricMatrix P_star = estimate_P_hat(refit);
  const double s2 = variance_plugin(A_star, P_star, refit, s.i, s.k);
  double ip = 0.0;
  const double* uo = s.eig.col(s.k);
  const double* ur = refit.col(s.k);
  for (int t = 0; t < refit.n; ++t) ip += uo[t] * ur[t];
  const double sign = ip >= 0.0 ? 1.0 : -1.0;
  return studentize(refit.u(s.i, s.k), s.eig.u(s.i, s.k), s.b_hat[static_cast<std::size_t>(s.i)],
                    std::sqrt(s2), sign);
}

}  // namespace

double residual_bootstrap_draw(const BootstrapSetup& s, std::uint64_t seed) {
  const int n = s.P_hat.n();
  const SymmetricMatrix E = residual_noise_matrix(s.pool, n, seed);
  SymmetricMatrix A_star(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A_star.set(i, j, s.P_hat(i, j) + E(i, j));
  return studentized_replicate(s, A_star);
}

double parametric_graph_draw(const BootstrapSetup& s, std::uint64_t seed) {
  const int n = s.P_hat.n();
  SymmetricMatrix clipped(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) clipped.set(i, j, std::clamp(s.P_hat(i, j), 0.0, 1.0));
  const SymmetricMatrix A_star = sample_bernoulli_graph(clipped, seed);
  return studentized_replicate(s, A_star);
}

BootstrapCdf bootstrap_cdf(const BootstrapSetup& s, BootstrapScheme scheme, int n_draws,
                           double sd, std::uint64_t replicate_seed) {
  if (n_draws <= 0) throw ConfigError("bootstrap_cdf: n_draws must be positive");
  if (!(sd >= 0.0)) throw ConfigError("bootstrap_cdf: smoothing width must be >= 0");
  BootstrapCdf out;
  out.requested = n_draws;
  std::vector<double> kept;
  kept.reserve(static_cast<std::size_t>(n_draws));
  int dropped = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : dropped)
  for (int b = 0; b < n_draws; ++b) {
    const std::uint64_t seed = hash64({replicate_seed, stream::boot_tag, static_cast<std::uint64_t>(b)});
    double t = 0.0;
    bool ok = true;
    try {
      t = scheme == BootstrapScheme::residual ? residual_bootstrap_draw(s, seed)
                                              : parametric_graph_draw(s, seed);
    } catch (const DegenerateError&) {
      ok = false;
    } catch (const RankError&) {
      ok = false;
    } catch (const EigengapError&) {
      ok = false;
    }
    if (ok) {
      if (sd > 0.0) t += sd * CounterRng(seed, stream::smoothing).gaussian(0);
      if (t == 0.0) t = 0.0;  // collapse -0.0 so the sorted vector is unambiguous
#pragma omp critical
      kept.push_back(t);
    } else {
      dropped += 1;
    }
  }
  out.dropped = dropped;
  if (static_cast<double>(dropped) > 0.01 * static_cast<double>(n_draws))
    throw QualityError("bootstrap_cdf: dropped " + std::to_string(dropped) + " of " +
                       std::to_string(n_draws) + " draws");
  std::sort(kept.begin(), kept.end());
  out.draws = std::move(kept);
  return out;
}

}  // namespace eigenwise
