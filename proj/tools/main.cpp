// Command-line front end: subcommand dispatch, flag parsing, file layout.
// All numerics live in the library; this file only moves data.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eigenwise/bootstrap.hpp"
#include "eigenwise/edgeworth.hpp"
#include "eigenwise/errors.hpp"
#include "eigenwise/estimators.hpp"
#include "eigenwise/expansion.hpp"
#include "eigenwise/io.hpp"
#include "eigenwise/models.hpp"
#include "eigenwise/montecarlo.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/normal.hpp"
#include "eigenwise/rng.hpp"

using namespace eigenwise;

namespace {

constexpr const char* kUsage = R"(usage: eigenwise <subcommand> [--flag value ...]

subcommands:
  simulate          run one experiment end to end, writing CSVs and a manifest
                    --experiment {sbm-edgeworth,bootstrap-eee,bias-mse,fig1-toy}
                    --config FILE --out DIR --seed N --replicates M --threads T
  edgeworth-compare tabulate the Monte Carlo cdf against the normal and the
                    skew-corrected curves (theoretical and single-sample fit)
                    --config FILE --out FILE --seed N --threads T
  bootstrap         bootstrap the studentized entry of an observed matrix
                    --matrix FILE --p INT --q INT --i INT --k INT --draws INT
                    --scheme {residual,graph} --tau X --seed N --out FILE
  bias-correct      eigenvector column with its estimated bias removed
                    --matrix FILE --p INT --q INT --k INT --out FILE
  denoise           rank-r denoising of a rectangular observation
                    --matrix FILE --rank R --rho X --out FILE --mhat FILE
  expansion-check   eigenvector expansion residual decay table
                    --n LIST --seeds INT --seed N --out FILE

Indices (--i, --k) are 1-based.  Matrix files: first line the dimension, then
one row per line ("rows cols" header for denoise).  Omitting --out prints the
CSV to standard output.  Exit codes: 0 ok, 2 configuration, 3 numeric, 4 I/O.
)";

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// "--key value" pairs (or --key=value); every key must be consumed exactly
// once by the subcommand's whitelist.
class Flags {
 public:
  Flags(int argc, char** argv, int start) {
    for (int t = start; t < argc; ++t) {
      std::string tok = argv[t];
      if (tok.rfind("--", 0) != 0) throw ConfigError("expected a --flag, got '" + tok + "'");
      tok.erase(0, 2);
      const std::size_t eq = tok.find('=');
      std::string value;
      if (eq != std::string::npos) {
        value = tok.substr(eq + 1);
        tok.erase(eq);
      } else {
        if (t + 1 >= argc) throw ConfigError("flag --" + tok + " is missing its value");
        value = argv[++t];
      }
      if (tok.empty()) throw ConfigError("empty flag name");
      for (const auto& [k, v] : pairs_)
        if (k == tok) throw ConfigError("flag --" + tok + " given twice");
      pairs_.emplace_back(tok, value);
    }
  }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : pairs_)
      if (k == key) return true;
    return false;
  }

  std::string get(const std::string& key, const std::string& fallback) {
    for (auto& [k, v] : pairs_)
      if (k == key) {
        consumed_.push_back(k);
        return v;
      }
    return fallback;
  }

  std::string require(const std::string& key) {
    if (!has(key)) throw ConfigError("missing required flag --" + key);
    return get(key, "");
  }

  long get_long(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const std::string v = get(key, "");
    try {
      std::size_t pos = 0;
      const long out = std::stol(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("flag --" + key + " has a malformed integer '" + v + "'");
    }
  }

  double get_double(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const std::string v = get(key, "");
    try {
      std::size_t pos = 0;
      const double out = std::stod(v, &pos);
      if (pos != v.size() || !std::isfinite(out)) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("flag --" + key + " has a malformed number '" + v + "'");
    }
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const std::string v = get(key, "");
    try {
      std::size_t pos = 0;
      const std::uint64_t out = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("flag --" + key + " has a malformed unsigned integer '" + v + "'");
    }
  }

  // Call after all gets: any flag never asked for is a typo.
  void finish() const {
    for (const auto& [k, v] : pairs_)
      if (std::find(consumed_.begin(), consumed_.end(), k) == consumed_.end())
        throw ConfigError("unknown flag --" + k);
  }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::vector<std::string> consumed_;
};

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int ambient_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Write to the path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  write_text_file(path, text);
}

RunConfig load_run_config(Flags& flags, const std::string& experiment_flag) {
  const std::string config_path = flags.get("config", "");
  const std::string text = config_path.empty() ? std::string() : read_text_file(config_path);
  RunConfig rc = parse_config(text, experiment_flag);
  rc.seed = flags.get_u64("seed", rc.seed);
  const long threads = flags.get_long("threads", rc.threads);
  if (threads < 0) throw ConfigError("flag --threads must be nonnegative");
  rc.threads = static_cast<int>(threads);
  rc.out_dir = flags.get("out", rc.out_dir);
  return rc;
}

int cmd_simulate(Flags& flags) {
  const double t0 = now_seconds();
  RunConfig rc = load_run_config(flags, flags.get("experiment", ""));
  if (flags.has("replicates")) {
    const long m = flags.get_long("replicates", 0);
    if (m < 1) throw ConfigError("flag --replicates must be at least 1");
    if (rc.exp.experiment == "bias-mse")
      rc.exp.replicates = static_cast<int>(m);
    else if (rc.exp.experiment == "bootstrap-eee")
      rc.exp.repeats = static_cast<int>(m);
    else
      throw ConfigError("experiment '" + rc.exp.experiment +
                        "' has no replicate loop; scale it with n_mc in the config");
  }
  flags.finish();
  apply_threads(rc.threads);

  const double t1 = now_seconds();
  const ExperimentResult res = run_experiment(rc.exp, rc.seed);
  const double t2 = now_seconds();

  std::filesystem::create_directories(rc.out_dir);
  const std::string prefix = rc.out_dir + "/";

  std::vector<std::vector<double>> curve_rows;
  for (const CurvePoint& p : res.curves) curve_rows.push_back({p.x, p.F, p.Phi, p.G, p.approx});
  const char* approx_name = rc.exp.experiment == "bootstrap-eee" ? "Fstar" : "Ghat";
  write_csv(prefix + "curves.csv", {"x", "F", "Phi", "G", approx_name}, curve_rows);

  std::vector<std::vector<double>> tv_rows;
  for (const TvRow& r : res.tv_table)
    tv_rows.push_back({static_cast<double>(r.index), r.tv_phi, r.tv_g, r.tv_ghat, r.tv_boot});
  write_csv(prefix + "tv_table.csv", {"i", "tv_phi", "tv_g", "tv_ghat", "tv_boot"}, tv_rows);

  std::vector<std::vector<double>> box_rows;
  for (const BoxplotRow& r : res.boxplot)
    box_rows.push_back({static_cast<double>(r.n), r.rho, static_cast<double>(r.replicate), r.value});
  write_csv(prefix + "boxplot.csv", {"n", "rho", "replicate", "statistic"}, box_rows);

  RunManifest m;
  m.experiment = rc.exp.experiment;
  m.base_seed = rc.seed;
  m.threads = rc.threads > 0 ? rc.threads : ambient_threads();
  m.config_echo = echo_config(rc);
  const std::uint64_t tag = hash64_str(rc.exp.experiment);
  const std::uint64_t rep0 = hash64({rc.seed, tag, 0});
  m.derived_seeds = {{"experiment_tag", tag}, {"replicate_0", rep0}};
  if (rc.exp.experiment == "bootstrap-eee")
    m.derived_seeds.emplace_back("boot_draw_0", hash64({rep0, stream::boot_tag, 0}));
  m.mc_requested = res.mc_requested;
  m.mc_dropped = res.mc_dropped;
  m.boot_requested = res.boot_requested;
  m.boot_dropped = res.boot_dropped;
  const double t3 = now_seconds();
  m.wall_seconds = {{"setup", t1 - t0}, {"run", t2 - t1}, {"write", t3 - t2}, {"total", t3 - t0}};
  write_text_file(prefix + "manifest.json", m.to_json());
  std::fprintf(stderr, "simulate %s: wrote %s{curves,tv_table,boxplot}.csv + manifest.json\n",
               rc.exp.experiment.c_str(), prefix.c_str());
  return 0;
}

int cmd_edgeworth_compare(Flags& flags) {
  RunConfig rc = load_run_config(flags, flags.get("experiment", ""));
  const std::string out = flags.get("out", "");
  flags.finish();
  apply_threads(rc.threads);

  const ModelInstance model = experiment_model(rc.exp);
  const int i = rc.exp.target_i - 1;
  const int k = rc.exp.target_k - 1;

  McOptions opt;
  opt.n_mc = rc.exp.n_mc;
  opt.bias = rc.exp.bias;
  opt.tag = hash64_str(rc.exp.experiment);
  const EmpiricalCdf F = mc_true_cdf(model, i, k, opt, rc.seed);

  const PopulationMoments pm = population_moments(model, i, k);
  const EdgeworthCurve G{pm.kappa};

  // One observed draw supplies the data-driven curve.
  const std::uint64_t obs_seed = hash64({rc.seed, hash64_str("edgeworth-compare/observed"), 0});
  const SymmetricMatrix E = sample_noise(*model.noise, model.n(), obs_seed);
  SymmetricMatrix A(model.n());
  for (int r = 0; r < model.n(); ++r)
    for (int c = r; c < model.n(); ++c) A.set(r, c, model.P(r, c) + E(r, c));
  const TruncatedEigen eig = truncated_spectral(A, model.eig.p, model.eig.q);
  const EdgeworthCurve Ghat = empirical_edgeworth(A, estimate_P_hat(eig), eig, i, k);

  std::vector<std::vector<double>> rows;
  for (int t = 0; t < rc.exp.curve_points; ++t) {
    const double x = rc.exp.curve_lo + (rc.exp.curve_hi - rc.exp.curve_lo) * static_cast<double>(t) /
                                           static_cast<double>(rc.exp.curve_points - 1);
    rows.push_back({x, F(x), normal_cdf(x), G(x), Ghat(x)});
  }
  emit(out, csv_text({"x", "F_true", "Phi", "G_theoretical", "G_empirical"}, rows));
  return 0;
}

int cmd_bootstrap(Flags& flags) {
  const std::string matrix_path = flags.require("matrix");
  const long p = flags.get_long("p", 1);
  const long q = flags.get_long("q", 0);
  const long i = flags.get_long("i", 1);
  const long k = flags.get_long("k", 1);
  const long draws = flags.get_long("draws", 2000);
  const std::string scheme_name = flags.get("scheme", "residual");
  const double tau = flags.get_double("tau", 1.0);
  const std::uint64_t seed = flags.get_u64("seed", 1);
  const std::string out = flags.get("out", "");
  const long threads = flags.get_long("threads", 0);
  flags.finish();
  apply_threads(static_cast<int>(threads));

  if (i < 1 || k < 1) throw ConfigError("flags --i and --k are 1-based and must be positive");
  if (tau < 0.0) throw ConfigError("flag --tau must be nonnegative");
  BootstrapScheme scheme;
  if (scheme_name == "residual")
    scheme = BootstrapScheme::residual;
  else if (scheme_name == "graph")
    scheme = BootstrapScheme::graph;
  else
    throw ConfigError("flag --scheme must be 'residual' or 'graph'");

  const SymmetricMatrix A = read_matrix_file(matrix_path);
  const BootstrapSetup setup = bootstrap_setup(A, static_cast<int>(p), static_cast<int>(q),
                                               static_cast<int>(i - 1), static_cast<int>(k - 1));

  // The residual scheme stays unsmoothed; for the graph scheme the smoothing
  // width follows the lattice rule with the fitted edge density as rho.
  double sd = 0.0;
  if (scheme == BootstrapScheme::graph && tau > 0.0) {
    const int n = A.n();
    double density = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) density += std::clamp(setup.P_hat(r, c), 0.0, 1.0);
    density /= static_cast<double>(n) * n;
    if (density <= 0.0) throw DegenerateError("fitted edge density is zero; cannot smooth");
    sd = smoother_scale(SmootherKind::graph, 0.0, density, n, tau).sd;
  }

  const BootstrapCdf boot = bootstrap_cdf(setup, scheme, static_cast<int>(draws), sd, seed);

  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < boot.draws.size(); ++b)
    rows.push_back({static_cast<double>(b + 1), boot.draws[b]});
  emit(out, csv_text({"b", "tstar"}, rows));

  const auto quantile = [&](double level) {
    const std::size_t B = boot.draws.size();
    const std::size_t r = std::min(B - 1, static_cast<std::size_t>(std::max(
                                              0.0, std::ceil(level * static_cast<double>(B)) - 1)));
    return boot.draws[r];
  };
  std::fprintf(stderr, "draws kept %d of %d, smoothing sd %s\n", boot.requested - boot.dropped,
               boot.requested, format_double(sd).c_str());
  std::fprintf(stderr, "quantile_2.5 = %s\n", format_double(quantile(0.025)).c_str());
  std::fprintf(stderr, "quantile_50 = %s\n", format_double(quantile(0.50)).c_str());
  std::fprintf(stderr, "quantile_97.5 = %s\n", format_double(quantile(0.975)).c_str());
  return 0;
}

int cmd_bias_correct(Flags& flags) {
  const std::string matrix_path = flags.require("matrix");
  const long p = flags.get_long("p", 1);
  const long q = flags.get_long("q", 0);
  const long k = flags.get_long("k", 1);
  const std::string out = flags.get("out", "");
  flags.finish();
  if (k < 1) throw ConfigError("flag --k is 1-based and must be positive");

  const SymmetricMatrix A = read_matrix_file(matrix_path);
  const TruncatedEigen eig = truncated_spectral(A, static_cast<int>(p), static_cast<int>(q));
  const DiagonalEstimate D = estimate_D_hat(A, estimate_P_hat(eig));
  const BiasVector bias = bias_vector(eig, D, static_cast<int>(k - 1), BiasSource::plugin);

  std::vector<std::vector<double>> rows;
  for (int r = 0; r < A.n(); ++r) {
    const double uhat = eig.u(r, static_cast<int>(k - 1));
    const double bhat = bias.b[static_cast<std::size_t>(r)];
    rows.push_back({static_cast<double>(r + 1), uhat, bhat, uhat - bhat});
  }
  emit(out, csv_text({"index", "uhat", "bhat", "ucorrected"}, rows));
  return 0;
}

int cmd_denoise(Flags& flags) {
  const std::string matrix_path = flags.require("matrix");
  const long rank = flags.get_long("rank", 1);
  const double rho = flags.get_double("rho", -1.0);
  const std::string out = flags.get("out", "");
  const std::string mhat_path = flags.get("mhat", "");
  flags.finish();
  if (rank < 1) throw ConfigError("flag --rank must be at least 1");

  const RectMatrix X = read_rect_file(matrix_path);
  const DenoisingFit fit = denoising_fit(X, static_cast<int>(rank));

  std::vector<std::vector<double>> rows;
  for (int k = 0; k < fit.r; ++k)
    for (int i = 0; i < fit.p1; ++i) {
      const DenoisingEntry e = denoising_entry(fit, X, i, k, rho);
      rows.push_back({static_cast<double>(k + 1), static_cast<double>(i + 1), fit.sigma[static_cast<std::size_t>(k)],
                      e.u_hat, e.b, e.u_hat - e.b, std::sqrt(e.tau2)});
    }
  emit(out, csv_text({"k", "i", "sigma", "uhat", "bhat", "ucorrected", "se"}, rows));
  if (!mhat_path.empty()) write_text_file(mhat_path, write_rect_text(fit.M_hat));
  std::fprintf(stderr, "rank %d fit, rho_hat = %s\n", fit.r, format_double(fit.rho_hat).c_str());
  return 0;
}

int cmd_expansion_check(Flags& flags) {
  const std::string n_list = flags.get("n", "200,400");
  const long seeds = flags.get_long("seeds", 100);
  const std::uint64_t base = flags.get_u64("seed", 1);
  const std::string out = flags.get("out", "");
  const long threads = flags.get_long("threads", 0);
  flags.finish();
  apply_threads(static_cast<int>(threads));
  if (seeds < 1) throw ConfigError("flag --seeds must be at least 1");

  std::vector<int> sizes;
  std::size_t pos = 0;
  while (pos <= n_list.size()) {
    const std::size_t comma = n_list.find(',', pos);
    const std::string tok =
        n_list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 4) throw std::invalid_argument(tok);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("flag --n has a malformed entry '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  const std::uint64_t tag = hash64_str("expansion-check");
  std::vector<std::vector<double>> rows;
  for (const int n : sizes) {
    ExperimentConfig cfg = ExperimentConfig::defaults("sbm-edgeworth");
    cfg.n = n;
    const ModelInstance model = experiment_model(cfg);
    std::vector<ExpansionReport> reps(static_cast<std::size_t>(seeds));
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < seeds; ++t) {
      const std::uint64_t seed =
          hash64({base, tag, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)});
      const SymmetricMatrix E = sample_noise_serial(*model.noise, n, seed);
      SymmetricMatrix A(n);
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) A.set(r, c, model.P(r, c) + E(r, c));
      reps[static_cast<std::size_t>(t)] = expansion_report(A, model.eig, 0);
    }
    for (long t = 0; t < seeds; ++t) {
      const ExpansionReport& r = reps[static_cast<std::size_t>(t)];
      rows.push_back({static_cast<double>(t + 1), static_cast<double>(n), r.r0, r.r1, r.r2});
    }
  }
  emit(out, csv_text({"seed", "n", "r0", "r1", "r2"}, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return 2;
  }
  const std::string cmd = argv[1];
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    std::fputs(kUsage, stdout);
    return 0;
  }
  try {
    Flags flags(argc, argv, 2);
    if (cmd == "simulate") return cmd_simulate(flags);
    if (cmd == "edgeworth-compare") return cmd_edgeworth_compare(flags);
    if (cmd == "bootstrap") return cmd_bootstrap(flags);
    if (cmd == "bias-correct") return cmd_bias_correct(flags);
    if (cmd == "denoise") return cmd_denoise(flags);
    if (cmd == "expansion-check") return cmd_expansion_check(flags);
    throw ConfigError("unknown subcommand '" + cmd + "'");
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
