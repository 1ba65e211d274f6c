#include "eigenwise/noise.hpp"

#include <cmath>

#include "eigenwise/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eigenwise {

namespace {
// exact E|E|^3 of sqrt(rho)*(Exp(1)-1); the 12/e - 2 closure is checked
// against an adaptive-quadrature oracle in the tests
const double kExpAbsThird = 12.0 / std::exp(1.0) - 2.0;
}  // namespace

NoiseSpec NoiseSpec::discrete_three_point(double rho) {
  if (!(rho > 0.0) || rho > 1.0) throw ConfigError("discrete noise needs rho in (0,1]");
  NoiseSpec s;
  s.kind_ = NoiseKind::discrete_three_point;
  s.rho_ = rho;
  return s;
}

NoiseSpec NoiseSpec::centered_exponential(double rho) {
  if (!(rho > 0.0) || rho > 1.0) throw ConfigError("exponential noise needs rho in (0,1]");
  NoiseSpec s;
  s.kind_ = NoiseKind::centered_exponential;
  s.rho_ = rho;
  return s;
}

NoiseSpec NoiseSpec::centered_bernoulli(SymmetricMatrix P) {
  double pmax = 0.0;
  for (int i = 0; i < P.n(); ++i)
    for (int j = i; j < P.n(); ++j) {
      if (P(i, j) < 0.0 || P(i, j) > 1.0)
        throw DomainError("Bernoulli probabilities must lie in [0,1]");
      pmax = std::fmax(pmax, P(i, j));
    }
  NoiseSpec s;
  s.kind_ = NoiseKind::centered_bernoulli;
  s.rho_ = pmax;
  s.bern_p_ = std::make_shared<const SymmetricMatrix>(std::move(P));
  return s;
}

NoiseSpec NoiseSpec::custom_law(CustomNoise law) {
  if (!law.sample) throw ConfigError("custom noise needs a sampler");
  NoiseSpec s;
  s.kind_ = NoiseKind::custom;
  s.custom_ = std::move(law);
  return s;
}

const SymmetricMatrix& NoiseSpec::probability_matrix() const {
  if (!bern_p_) throw ConfigError("noise spec has no probability matrix");
  return *bern_p_;
}

double NoiseSpec::variance(int i, int j) const {
  switch (kind_) {
    case NoiseKind::discrete_three_point:
      return 4.0 * rho_;
    case NoiseKind::centered_exponential:
      return rho_;
    case NoiseKind::centered_bernoulli: {
      const double p = (*bern_p_)(i, j);
      return p * (1.0 - p);
    }
    case NoiseKind::custom:
      if (!custom_.has_moments)
        throw MomentUnavailableError("custom noise has no moment closures");
      return custom_.variance;
  }
  throw ConfigError("unreachable noise kind");
}

double NoiseSpec::third_moment(int i, int j) const {
  switch (kind_) {
    case NoiseKind::discrete_three_point:
      // 4^3*rho/5 + (-1)^3*4*rho/5
      return 12.0 * rho_;
    case NoiseKind::centered_exponential:
      return 2.0 * rho_ * std::sqrt(rho_);
    case NoiseKind::centered_bernoulli: {
      const double p = (*bern_p_)(i, j);
      return p * (1.0 - p) * (1.0 - 2.0 * p);
    }
    case NoiseKind::custom:
      if (!custom_.has_moments)
        throw MomentUnavailableError("custom noise has no moment closures");
      return custom_.third;
  }
  throw ConfigError("unreachable noise kind");
}

double NoiseSpec::beta() const {
  switch (kind_) {
    case NoiseKind::discrete_three_point:
      return 68.0 * rho_ / 5.0;
    case NoiseKind::centered_exponential:
      return kExpAbsThird * rho_ * std::sqrt(rho_);
    case NoiseKind::centered_bernoulli: {
      double worst = 0.0;
      const auto& P = *bern_p_;
      for (int i = 0; i < P.n(); ++i)
        for (int j = i; j < P.n(); ++j) {
          const double p = P(i, j);
          worst = std::fmax(worst, p * (1.0 - p) * (p * p + (1.0 - p) * (1.0 - p)));
        }
      return worst;
    }
    case NoiseKind::custom:
      if (!custom_.has_moments)
        throw MomentUnavailableError("custom noise has no moment closures");
      return custom_.abs_third;
  }
  throw ConfigError("unreachable noise kind");
}

double NoiseSpec::sample_entry(const CounterRng& rng, std::uint64_t counter, int i,
                               int j) const {
  switch (kind_) {
    case NoiseKind::discrete_three_point: {
      const double u = rng.uniform(counter);
      if (u < rho_ / 5.0) return 4.0;
      if (u < rho_) return -1.0;
      return 0.0;
    }
    case NoiseKind::centered_exponential:
      return std::sqrt(rho_) * (rng.exponential(counter) - 1.0);
    case NoiseKind::centered_bernoulli: {
      const double p = (*bern_p_)(i, j);
      return (rng.uniform(counter) < p) ? 1.0 - p : -p;
    }
    case NoiseKind::custom:
      return custom_.sample(rng, counter);
  }
  throw ConfigError("unreachable noise kind");
}

namespace {

template <bool Parallel>
SymmetricMatrix fill_noise(const NoiseSpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw ShapeError("noise dimension must be positive");
  SymmetricMatrix E(n);
  const CounterRng rng(seed, stream::noise_entries);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
#endif
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + j;
      E.set(i, j, spec.sample_entry(rng, counter, i, j));
    }
  }
  return E;
}

}  // namespace

SymmetricMatrix sample_noise(const NoiseSpec& spec, int n, std::uint64_t seed) {
  return fill_noise<true>(spec, n, seed);
}

SymmetricMatrix sample_noise_serial(const NoiseSpec& spec, int n, std::uint64_t seed) {
  return fill_noise<false>(spec, n, seed);
}

SymmetricMatrix sample_discrete_noise(int n, double rho, std::uint64_t seed) {
  return sample_noise(NoiseSpec::discrete_three_point(rho), n, seed);
}

SymmetricMatrix sample_centered_exponential_noise(int n, double rho, std::uint64_t seed) {
  return sample_noise(NoiseSpec::centered_exponential(rho), n, seed);
}

SymmetricMatrix sample_bernoulli_graph(const SymmetricMatrix& P, std::uint64_t seed) {
  const int n = P.n();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (P(i, j) < 0.0 || P(i, j) > 1.0)
        throw DomainError("Bernoulli probabilities must lie in [0,1]");
  SymmetricMatrix A(n);
  const CounterRng rng(seed, stream::noise_entries);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) + j;
      A.set(i, j, rng.uniform(counter) < P(i, j) ? 1.0 : 0.0);
    }
  return A;
}

NoiseMoments noise_moments(const NoiseSpec& spec, int n) {
  NoiseMoments m{SymmetricMatrix(n), SymmetricMatrix(n), spec.beta()};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      m.variance.set(i, j, spec.variance(i, j));
      m.third.set(i, j, spec.third_moment(i, j));
    }
  return m;
}

}  // namespace eigenwise
