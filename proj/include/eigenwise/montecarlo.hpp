#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eigenwise/edgeworth.hpp"
#include "eigenwise/estimators.hpp"
#include "eigenwise/models.hpp"

namespace eigenwise {

// Empirical distribution function of a finite sample.  Samples are sorted on
// construction; evaluation is right-continuous (fraction of samples <= x).
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;   // fraction of samples <= x
  double left_limit(double x) const;   // fraction of samples <  x

  const std::vector<double>& samples() const { return samples_; }
  int size() const { return static_cast<int>(samples_.size()); }

 private:
  std::vector<double> samples_;
};

// Largest absolute gap sup_x |F(x) - G(x)| between two distribution
// functions, computed exactly on the finite set of points where it can be
// attained rather than on a grid.
//
// Step vs step: both curves are constant between their jump points, so the
// supremum is attained at a sample of one of them.
double tv_distance(const EmpiricalCdf& F, const EmpiricalCdf& G);

// Step vs continuous curve: on each interval where F is constant the gap is
// extremal at an endpoint (one-sided limits at the sample jumps) or at a
// stationary point of the curve, which the caller supplies.  Assumes the
// curve tends to 0 at -inf and 1 at +inf so the far tails contribute nothing
// beyond the outermost samples and stationary points.
double tv_distance(const EmpiricalCdf& F, const std::function<double(double)>& cdf,
                   const std::vector<double>& curve_critical_points = {});

double tv_distance(const EmpiricalCdf& F, const EdgeworthCurve& curve);

// ---------------------------------------------------------------------------
// Monte Carlo sampling distribution of the studentized eigenvector entries.

struct McOptions {
  long n_mc = 200000;                          // replicates (>= 100)
  BiasSource bias = BiasSource::population;    // recentering bias in T
  std::uint64_t tag = 0;                       // experiment id mixed into seeds
  double drop_tolerance = 0.001;               // allowed fraction of failed replicates
};

struct McColumn {
  std::vector<std::vector<double>> t;  // one sorted sample vector per entry
  long requested = 0;
  long dropped = 0;
};

// Per replicate t (seed = hash64({base_seed, tag, t})): draw A = P + E from
// the model's noise law, refit the truncated eigenpairs, sign-align column k
// against the true eigenvector, and studentize each requested entry with the
// population (or plug-in) bias and the plug-in variance.  Failed replicates
// (including draws whose noise is identically zero, which would studentize
// against rounding dust) are dropped and counted; more than drop_tolerance of
// them raises QualityError.  Output is replicate-order and thread-count
// invariant.
McColumn mc_true_cdf_column(const ModelInstance& model, const std::vector<int>& entries, int k,
                            const McOptions& opt, std::uint64_t base_seed);
// Single-threaded reference; bitwise identical to mc_true_cdf_column.
McColumn mc_true_cdf_column_serial(const ModelInstance& model, const std::vector<int>& entries,
                                   int k, const McOptions& opt, std::uint64_t base_seed);

EmpiricalCdf mc_true_cdf(const ModelInstance& model, int i, int k, const McOptions& opt,
                         std::uint64_t base_seed);

// ---------------------------------------------------------------------------
// Experiment drivers.  All indices in configs and outputs are 1-based.

struct ExperimentConfig {
  std::string experiment;
  int n = 80;
  double rho_exponent = -1.0 / 3.0;  // rho = n^rho_exponent
  double beta_delta = 0.25;          // eigenvalue scale: Delta = n^beta * sqrt(n*rho)
  double a = 3.0;                    // two-block weights
  double b = 1.0;
  long n_mc = 200000;
  int repeats = 100;      // repeated observations (bootstrap-eee)
  int n_boot = 2000;      // bootstrap draws per observation
  int replicates = 200;   // bias-mse replicates per rho
  std::vector<double> rho_exponents = {-0.5, -1.0 / 3.0};  // bias-mse grid
  double p_scale = 1.0;   // bias-mse block values: p = p_scale * sqrt(rho)
  double q_scale = 0.5;
  int target_i = 1;
  int target_k = 1;
  int curve_points = 401;
  double curve_lo = -4.0;
  double curve_hi = 4.0;
  BiasSource bias = BiasSource::population;

  // Per-experiment defaults; ConfigError for an unknown name.
  static ExperimentConfig defaults(const std::string& experiment);
};

struct CurvePoint {
  double x = 0.0;
  double F = 0.0;       // Monte Carlo cdf
  double Phi = 0.0;     // normal cdf
  double G = 0.0;       // skew-corrected curve with population moments
  double approx = 0.0;  // data-driven curve (empirical skew fit or bootstrap); NaN if none
};

struct TvRow {
  int index = 0;  // entry index, or repeat index for bootstrap-eee
  double tv_phi = 0.0;
  double tv_g = 0.0;
  double tv_ghat = 0.0;  // NaN when the experiment has no data-driven curve
  double tv_boot = 0.0;
};

struct BoxplotRow {
  int n = 0;
  double rho = 0.0;
  int replicate = 0;
  double value = 0.0;
};

struct ExperimentResult {
  std::vector<CurvePoint> curves;
  std::vector<TvRow> tv_table;
  std::vector<BoxplotRow> boxplot;
  long mc_requested = 0;
  long mc_dropped = 0;
  long boot_requested = 0;
  long boot_dropped = 0;
};

ExperimentResult experiment_sbm_edgeworth(const ExperimentConfig& cfg, std::uint64_t base_seed);
ExperimentResult experiment_fig1_toy(const ExperimentConfig& cfg, std::uint64_t base_seed);
ExperimentResult experiment_bootstrap_vs_eee(const ExperimentConfig& cfg, std::uint64_t base_seed);
ExperimentResult experiment_bias_mse(const ExperimentConfig& cfg, std::uint64_t base_seed);

// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::uint64_t base_seed);

// The single signal+noise model a curve experiment draws from; ConfigError
// for experiments built around a model grid (bias-mse).
ModelInstance experiment_model(const ExperimentConfig& cfg);

// Population studentizer scale and skewness for entry (i,k).
struct PopulationMoments {
  double sd = 0.0;
  double kappa = 0.0;
};
PopulationMoments population_moments(const ModelInstance& model, int i, int k);

}  // namespace eigenwise
