#include <algorithm>
#include <cmath>
#include <string>

#include "eigenwise/errors.hpp"
#include "eigenwise/montecarlo.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/rng.hpp"

namespace eigenwise {

namespace {

McColumn mc_column_impl(const ModelInstance& model, const std::vector<int>& entries, int k,
                        const McOptions& opt, std::uint64_t base_seed, bool parallel) {
  if (!model.noise) throw ConfigError("mc_true_cdf: model carries no noise law");
  if (opt.n_mc < 100) throw ConfigError("mc_true_cdf: need at least 100 replicates");
  if (entries.empty()) throw ConfigError("mc_true_cdf: no entries requested");
  const int n = model.n();
  if (k < 0 || k >= model.d()) throw ConfigError("mc_true_cdf: column index out of range");
  for (const int e : entries)
    if (e < 0 || e >= n) throw ConfigError("mc_true_cdf: entry index out of range");

  const NoiseSpec& spec = *model.noise;
  std::vector<double> b_pop;
  if (opt.bias == BiasSource::population) {
    const NoiseMoments mom = noise_moments(spec, n);
    DiagonalEstimate D;
    D.diag.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += mom.variance(i, j);
      D.diag[static_cast<std::size_t>(i)] = s;
    }
    b_pop = bias_vector(model.eig, D, k, BiasSource::population).b;
  }

  const std::size_t ne = entries.size();
  const long n_mc = opt.n_mc;
  std::vector<std::vector<double>> slots(ne, std::vector<double>(static_cast<std::size_t>(n_mc)));
  std::vector<char> ok(static_cast<std::size_t>(n_mc), 0);

  auto run_replicate = [&](long t) {
    const std::uint64_t seed = hash64({base_seed, opt.tag, static_cast<std::uint64_t>(t)});
    try {
      const SymmetricMatrix E = sample_noise_serial(spec, n, seed);
      bool all_zero = true;
      for (int i = 0; i < n && all_zero; ++i)
        for (int j = i; j < n; ++j)
          if (E(i, j) != 0.0) {
            all_zero = false;
            break;
          }
      // A noiseless draw studentizes against rounding dust; treat as failed.
      if (all_zero) throw DegenerateError("noise draw is identically zero");
      SymmetricMatrix A(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A.set(i, j, model.P(i, j) + E(i, j));
      const TruncatedEigen eig = truncated_spectral(A, model.eig.p, model.eig.q);
      double ip = 0.0;
      const double* ut = model.eig.col(k);
      const double* uh = eig.col(k);
      for (int r = 0; r < n; ++r) ip += ut[r] * uh[r];
      const double sign = ip >= 0.0 ? 1.0 : -1.0;
      const SymmetricMatrix P_hat = estimate_P_hat(eig);
      const std::vector<double> s2 = variance_plugin_column(A, P_hat, eig, k);
      const double* b = b_pop.data();
      std::vector<double> b_plug;
      if (opt.bias == BiasSource::plugin) {
        b_plug = bias_vector(eig, estimate_D_hat(A, P_hat), k, BiasSource::plugin).b;
        b = b_plug.data();
      }
      for (std::size_t e = 0; e < ne; ++e) {
        const int i = entries[e];
        double v = studentize(eig.u(i, k), model.eig.u(i, k), b[i],
                              std::sqrt(s2[static_cast<std::size_t>(i)]), sign);
        if (v == 0.0) v = 0.0;  // collapse -0.0 so the sorted vector is unambiguous
        slots[e][static_cast<std::size_t>(t)] = v;
      }
      ok[static_cast<std::size_t>(t)] = 1;
    } catch (const DegenerateError&) {
    } catch (const EigengapError&) {
    } catch (const RankError&) {
    } catch (const NonConvergenceError&) {
    }
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long t = 0; t < n_mc; ++t) run_replicate(t);
  } else {
    for (long t = 0; t < n_mc; ++t) run_replicate(t);
  }

  McColumn out;
  out.requested = n_mc;
  for (long t = 0; t < n_mc; ++t)
    if (!ok[static_cast<std::size_t>(t)]) ++out.dropped;
  if (static_cast<double>(out.dropped) > opt.drop_tolerance * static_cast<double>(n_mc))
    throw QualityError("mc_true_cdf: dropped " + std::to_string(out.dropped) + " of " +
                       std::to_string(n_mc) + " replicates");

  out.t.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    std::vector<double> kept;
    kept.reserve(static_cast<std::size_t>(n_mc - out.dropped));
    for (long t = 0; t < n_mc; ++t)
      if (ok[static_cast<std::size_t>(t)]) kept.push_back(slots[e][static_cast<std::size_t>(t)]);
    std::sort(kept.begin(), kept.end());
    out.t[e] = std::move(kept);
    slots[e].clear();
    slots[e].shrink_to_fit();
  }
  return out;
}

}  // namespace

McColumn mc_true_cdf_column(const ModelInstance& model, const std::vector<int>& entries, int k,
                            const McOptions& opt, std::uint64_t base_seed) {
  return mc_column_impl(model, entries, k, opt, base_seed, true);
}

McColumn mc_true_cdf_column_serial(const ModelInstance& model, const std::vector<int>& entries,
                                   int k, const McOptions& opt, std::uint64_t base_seed) {
  return mc_column_impl(model, entries, k, opt, base_seed, false);
}

EmpiricalCdf mc_true_cdf(const ModelInstance& model, int i, int k, const McOptions& opt,
                         std::uint64_t base_seed) {
  McColumn col = mc_true_cdf_column(model, std::vector<int>{i}, k, opt, base_seed);
  return EmpiricalCdf(std::move(col.t[0]));
}

}  // namespace eigenwise
