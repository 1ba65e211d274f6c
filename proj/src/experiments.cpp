#include <algorithm>
#include <cmath>
#include <limits>

#include "eigenwise/bootstrap.hpp"
#include "eigenwise/errors.hpp"
#include "eigenwise/montecarlo.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/normal.hpp"
#include "eigenwise/rng.hpp"

namespace eigenwise {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rho_of(const ExperimentConfig& cfg) {
  return std::pow(static_cast<double>(cfg.n), cfg.rho_exponent);
}

double delta_of(const ExperimentConfig& cfg, double rho) {
  const double n = static_cast<double>(cfg.n);
  return std::pow(n, cfg.beta_delta) * std::sqrt(n * rho);
}

std::vector<double> population_sd_column(const NoiseMoments& mom, const TruncatedEigen& eig,
                                         int k) {
  std::vector<double> s = variance_population_column(mom.variance, eig, k);
  for (double& v : s) v = std::sqrt(v);
  return s;
}

double population_kappa(const NoiseMoments& mom, const TruncatedEigen& eig, int i, int k,
                        double s_ik) {
  const int n = eig.n;
  std::vector<double> third(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) third[static_cast<std::size_t>(j)] = mom.third(i, j);
  return kappa_sum(third.data(), eig.col(k), n, s_ik, eig.lambda[k]);
}

// Shared curve emitter: F on its grid against Phi, the population curve, and
// an optional data-driven approximation.
std::vector<CurvePoint> make_curves(const ExperimentConfig& cfg, const EmpiricalCdf& F,
                                    const EdgeworthCurve& G,
                                    const std::function<double(double)>& approx) {
  std::vector<CurvePoint> out;
  const int m = cfg.curve_points;
  if (m < 2) throw ConfigError("curve_points must be at least 2");
  out.reserve(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    CurvePoint p;
    p.x = cfg.curve_lo + (cfg.curve_hi - cfg.curve_lo) * static_cast<double>(t) /
                             static_cast<double>(m - 1);
    p.F = F(p.x);
    p.Phi = normal_cdf(p.x);
    p.G = G(p.x);
    p.approx = approx ? approx(p.x) : kNaN;
    out.push_back(p);
  }
  return out;
}

// Common body for the two single-model distribution experiments: Monte Carlo
// truth against the normal and skew-corrected curves for every requested
// entry of eigenvector k.
ExperimentResult edgeworth_comparison(const ExperimentConfig& cfg, ModelInstance model,
                                      const std::vector<int>& entries, std::uint64_t base_seed,
                                      std::uint64_t tag) {
  const int k = cfg.target_k - 1;
  const int ti = cfg.target_i - 1;
  McOptions opt;
  opt.n_mc = cfg.n_mc;
  opt.bias = cfg.bias;
  opt.tag = tag;
  McColumn mc = mc_true_cdf_column(model, entries, k, opt, base_seed);

  const NoiseMoments mom = noise_moments(*model.noise, model.n());
  const std::vector<double> sd = population_sd_column(mom, model.eig, k);

  ExperimentResult res;
  res.mc_requested = mc.requested;
  res.mc_dropped = mc.dropped;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const int i = entries[e];
    const double kap = population_kappa(mom, model.eig, i, k, sd[static_cast<std::size_t>(i)]);
    const EdgeworthCurve G{kap};
    const EmpiricalCdf F(std::move(mc.t[e]));
    TvRow row;
    row.index = i + 1;
    row.tv_phi = tv_distance(F, EdgeworthCurve{0.0});
    row.tv_g = tv_distance(F, G);
    row.tv_ghat = kNaN;
    row.tv_boot = kNaN;
    res.tv_table.push_back(row);
    if (i == ti) res.curves = make_curves(cfg, F, G, nullptr);
  }
  return res;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "sbm-edgeworth") {
    cfg.rho_exponent = -1.0 / 3.0;
    cfg.n_mc = 200000;
  } else if (experiment == "fig1-toy") {
    cfg.rho_exponent = -1.0 / 3.0;
    cfg.n_mc = 200000;
  } else if (experiment == "bootstrap-eee") {
    cfg.n = 160;
    cfg.rho_exponent = -0.25;
    cfg.n_mc = 100000;
    cfg.repeats = 100;
    cfg.n_boot = 2000;
  } else if (experiment == "bias-mse") {
    cfg.n = 320;
    cfg.replicates = 200;
  } else {
    throw ConfigError("unknown experiment: " + experiment);
  }
  return cfg;
}

ModelInstance experiment_model(const ExperimentConfig& cfg) {
  const double rho = rho_of(cfg);
  if (cfg.experiment == "sbm-edgeworth") {
    ModelInstance model = build_sbm(cfg.n, cfg.a, cfg.b, delta_of(cfg, rho));
    model.noise = NoiseSpec::discrete_three_point(rho);
    return model;
  }
  if (cfg.experiment == "fig1-toy") {
    const double c = std::pow(static_cast<double>(cfg.n), -5.0 / 24.0);
    ModelInstance model = build_rank_one_blocks(cfg.n, c, c);
    model.noise = NoiseSpec::discrete_three_point(rho);
    return model;
  }
  if (cfg.experiment == "bootstrap-eee") {
    ModelInstance model = build_sbm(cfg.n, cfg.a, cfg.b, delta_of(cfg, rho));
    model.noise = NoiseSpec::centered_exponential(rho);
    return model;
  }
  throw ConfigError("experiment '" + cfg.experiment + "' does not define a single model");
}

PopulationMoments population_moments(const ModelInstance& model, int i, int k) {
  if (!model.noise) throw ConfigError("population_moments: model has no noise specification");
  if (i < 0 || i >= model.n()) throw ConfigError("population_moments: entry index out of range");
  if (k < 0 || k >= model.eig.d()) throw ConfigError("population_moments: column index out of range");
  const NoiseMoments mom = noise_moments(*model.noise, model.n());
  PopulationMoments pm;
  pm.sd = std::sqrt(variance_population(mom.variance, model.eig, i, k));
  pm.kappa = population_kappa(mom, model.eig, i, k, pm.sd);
  return pm;
}

ExperimentResult experiment_sbm_edgeworth(const ExperimentConfig& cfg, std::uint64_t base_seed) {
  std::vector<int> entries(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) entries[static_cast<std::size_t>(i)] = i;
  return edgeworth_comparison(cfg, experiment_model(cfg), entries, base_seed,
                              hash64_str("sbm-edgeworth"));
}

ExperimentResult experiment_fig1_toy(const ExperimentConfig& cfg, std::uint64_t base_seed) {
  return edgeworth_comparison(cfg, experiment_model(cfg), {cfg.target_i - 1}, base_seed,
                              hash64_str("fig1-toy"));
}

ExperimentResult experiment_bootstrap_vs_eee(const ExperimentConfig& cfg,
                                             std::uint64_t base_seed) {
  if (cfg.repeats < 1) throw ConfigError("bootstrap-eee: repeats must be positive");
  ModelInstance model = experiment_model(cfg);
  const int k = cfg.target_k - 1;
  const int ti = cfg.target_i - 1;

  McOptions opt;
  opt.n_mc = cfg.n_mc;
  opt.bias = cfg.bias;
  opt.tag = hash64_str("bootstrap-eee/oracle");
  McColumn mc = mc_true_cdf_column(model, {ti}, k, opt, base_seed);
  const EmpiricalCdf F(std::move(mc.t[0]));

  const NoiseMoments mom = noise_moments(*model.noise, model.n());
  const std::vector<double> sd = population_sd_column(mom, model.eig, k);
  const EdgeworthCurve G{population_kappa(mom, model.eig, ti, k, sd[static_cast<std::size_t>(ti)])};
  const double tv_phi = tv_distance(F, EdgeworthCurve{0.0});
  const double tv_g = tv_distance(F, G);

  ExperimentResult res;
  res.mc_requested = mc.requested;
  res.mc_dropped = mc.dropped;
  const std::uint64_t repeat_tag = hash64_str("bootstrap-eee/repeat");
  std::vector<double> first_draws;
  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t rseed = hash64({base_seed, repeat_tag, static_cast<std::uint64_t>(r)});
    const SymmetricMatrix E = sample_noise(*model.noise, cfg.n, rseed);
    SymmetricMatrix A(cfg.n);
    for (int i = 0; i < cfg.n; ++i)
      for (int j = i; j < cfg.n; ++j) A.set(i, j, model.P(i, j) + E(i, j));
    const BootstrapSetup setup = bootstrap_setup(A, model.eig.p, model.eig.q, ti, k);
    const BootstrapCdf boot = bootstrap_cdf(setup, BootstrapScheme::residual, cfg.n_boot, 0.0, rseed);
    res.boot_requested += boot.requested;
    res.boot_dropped += boot.dropped;
    const EmpiricalCdf Fstar(boot.draws);
    const EdgeworthCurve Ghat = empirical_edgeworth(A, setup.P_hat, setup.eig, ti, k);
    TvRow row;
    row.index = r + 1;
    row.tv_phi = tv_phi;
    row.tv_g = tv_g;
    row.tv_ghat = tv_distance(F, Ghat);
    row.tv_boot = tv_distance(F, Fstar);
    res.tv_table.push_back(row);
    if (r == 0) first_draws = boot.draws;
  }
  const EmpiricalCdf first_fstar(first_draws);
  res.curves = make_curves(cfg, F, G, [&first_fstar](double x) { return first_fstar(x); });
  return res;
}

ExperimentResult experiment_bias_mse(const ExperimentConfig& cfg, std::uint64_t base_seed) {
  ExperimentResult res;
  const std::uint64_t tag = hash64_str("bias-mse");
  for (std::size_t ridx = 0; ridx < cfg.rho_exponents.size(); ++ridx) {
    const double rho = std::pow(static_cast<double>(cfg.n), cfg.rho_exponents[ridx]);
    const double p = cfg.p_scale * std::sqrt(rho);
    const double q = cfg.q_scale * std::sqrt(rho);
    if (p <= 0.0 || p * p > 1.0 || q <= 0.0 || q * q > 1.0)
      throw ConfigError("bias-mse: block probabilities must lie in (0, 1]");
    ModelInstance model = build_rank_one_blocks(cfg.n, p, q);
    const NoiseSpec spec = NoiseSpec::centered_bernoulli(model.P);
    const int n = cfg.n;
    const double scale = static_cast<double>(n) * rho;

    std::vector<double> value(static_cast<std::size_t>(cfg.replicates), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(cfg.replicates), 0);
#pragma omp parallel for schedule(dynamic, 4)
    for (int r = 0; r < cfg.replicates; ++r) {
      const std::uint64_t seed =
          hash64({base_seed, tag, static_cast<std::uint64_t>(ridx), static_cast<std::uint64_t>(r)});
      try {
        const SymmetricMatrix E = sample_noise_serial(spec, n, seed);
        SymmetricMatrix A(n);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) A.set(i, j, model.P(i, j) + E(i, j));
        const TruncatedEigen eig = truncated_spectral(A, 1, 0);
        double ip = 0.0;
        for (int t = 0; t < n; ++t) ip += eig.u(t, 0) * model.eig.u(t, 0);
        const double sg = ip >= 0.0 ? 1.0 : -1.0;
        const DiagonalEstimate D = estimate_D_hat(A, estimate_P_hat(eig));
        const std::vector<double> uc = bias_correct(eig, D, 0);
        double err0 = 0.0, err1 = 0.0;
        for (int t = 0; t < n; ++t) {
          const double d0 = sg * eig.u(t, 0) - model.eig.u(t, 0);
          const double d1 = sg * uc[static_cast<std::size_t>(t)] - model.eig.u(t, 0);
          err0 += d0 * d0;
          err1 += d1 * d1;
        }
        value[static_cast<std::size_t>(r)] = scale * scale * (err0 - err1);
        ok[static_cast<std::size_t>(r)] = 1;
      } catch (const DegenerateError&) {
      } catch (const EigengapError&) {
      } catch (const RankError&) {
      } catch (const NonConvergenceError&) {
      }
    }
    res.mc_requested += cfg.replicates;
    for (int r = 0; r < cfg.replicates; ++r) {
      if (!ok[static_cast<std::size_t>(r)]) {
        ++res.mc_dropped;
        continue;
      }
      BoxplotRow row;
      row.n = n;
      row.rho = rho;
      row.replicate = r + 1;
      row.value = value[static_cast<std::size_t>(r)];
      res.boxplot.push_back(row);
    }
  }
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::uint64_t base_seed) {
  if (cfg.experiment == "sbm-edgeworth") return experiment_sbm_edgeworth(cfg, base_seed);
  if (cfg.experiment == "fig1-toy") return experiment_fig1_toy(cfg, base_seed);
  if (cfg.experiment == "bootstrap-eee") return experiment_bootstrap_vs_eee(cfg, base_seed);
  if (cfg.experiment == "bias-mse") return experiment_bias_mse(cfg, base_seed);
  throw ConfigError("unknown experiment: " + cfg.experiment);
}

}  // namespace eigenwise
