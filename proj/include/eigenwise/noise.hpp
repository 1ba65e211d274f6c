#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "eigenwise/rng.hpp"
#include "eigenwise/sym_matrix.hpp"

namespace eigenwise {

enum class NoiseKind { discrete_three_point, centered_exponential, centered_bernoulli, custom };

// Optional user-supplied noise law: a per-entry sampler plus (optionally) the
// exact i.i.d. moments the bias/Edgeworth formulas need.
struct CustomNoise {
  std::function<double(const CounterRng&, std::uint64_t)> sample;
  bool has_moments = false;
  double variance = 0.0;
  double third = 0.0;
  double abs_third = 0.0;
};

// Mean-zero noise law descriptor with exact moment accessors.
class NoiseSpec {
public:
  // P(4) = rho/5, P(-1) = 4 rho/5, P(0) = 1 - rho.
  static NoiseSpec discrete_three_point(double rho);
  // sqrt(rho) * (Exp(1) - 1): support x >= -sqrt(rho), variance rho.
  static NoiseSpec centered_exponential(double rho);
  // E_ij = 1{u < p_ij} - p_ij for a fixed probability matrix.
  static NoiseSpec centered_bernoulli(SymmetricMatrix P);
  static NoiseSpec custom_law(CustomNoise law);

  NoiseKind kind() const { return kind_; }
  double rho() const { return rho_; }
  const SymmetricMatrix& probability_matrix() const;

  double variance(int i, int j) const;
  double third_moment(int i, int j) const;
  double beta() const;  // max_{ij} E|E_ij|^3

  // One upper-triangle entry; pure in (rng key, counter).
  double sample_entry(const CounterRng& rng, std::uint64_t counter, int i, int j) const;

private:
  NoiseKind kind_;
  double rho_ = 0.0;
  std::shared_ptr<const SymmetricMatrix> bern_p_;
  CustomNoise custom_;
};

// i.i.d. upper-triangle fill (diagonal included), entry counter i*n+j, row-parallel.
SymmetricMatrix sample_noise(const NoiseSpec& spec, int n, std::uint64_t seed);
// Reference single-threaded implementation; bitwise identical to sample_noise.
SymmetricMatrix sample_noise_serial(const NoiseSpec& spec, int n, std::uint64_t seed);

SymmetricMatrix sample_discrete_noise(int n, double rho, std::uint64_t seed);
SymmetricMatrix sample_centered_exponential_noise(int n, double rho, std::uint64_t seed);
// 0/1 adjacency with A_ij ~ Bernoulli(P_ij); bitwise-coherent with the
// centered_bernoulli noise spec under the same seed.
SymmetricMatrix sample_bernoulli_graph(const SymmetricMatrix& P, std::uint64_t seed);

struct NoiseMoments {
  SymmetricMatrix variance;
  SymmetricMatrix third;
  double beta = 0.0;
};

NoiseMoments noise_moments(const NoiseSpec& spec, int n);

}  // namespace eigenwise
