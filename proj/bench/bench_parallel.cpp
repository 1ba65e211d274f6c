// Times the OpenMP kernels against their serial reference implementations
// and verifies that both produce bitwise-identical results.  Usage:
//   bench_parallel [n_noise] [n_mc]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eigenwise/models.hpp"
#include "eigenwise/montecarlo.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/rng.hpp"

using namespace eigenwise;

namespace {

double seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = seconds();
    fn();
    best = std::min(best, seconds() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int n_noise = argc > 1 ? std::atoi(argv[1]) : 2000;
  const long n_mc = argc > 2 ? std::atol(argv[2]) : 2000;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);
  std::printf("%-28s %10s %12s %12s %8s\n", "kernel", "size", "serial ms", "parallel ms",
              "speedup");

  {
    const auto spec = NoiseSpec::discrete_three_point(0.1);
    SymmetricMatrix serial(0), parallel(0);
    const double ts =
        time_best_of(3, [&] { serial = sample_noise_serial(spec, n_noise, 42); });
    const double tp = time_best_of(3, [&] { parallel = sample_noise(spec, n_noise, 42); });
    const bool same = serial.data() == parallel.data();
    std::printf("%-28s %10d %12.2f %12.2f %7.2fx  %s\n", "noise fill", n_noise, ts * 1e3,
                tp * 1e3, ts / tp, same ? "bitwise equal" : "MISMATCH");
    if (!same) return 1;
  }

  {
    const int n = 64;
    ExperimentConfig cfg = ExperimentConfig::defaults("sbm-edgeworth");
    cfg.n = n;
    const ModelInstance model = experiment_model(cfg);
    McOptions opt;
    opt.n_mc = n_mc;
    McColumn serial, parallel;
    const double ts = time_best_of(
        3, [&] { serial = mc_true_cdf_column_serial(model, {0}, 0, opt, 7); });
    const double tp =
        time_best_of(3, [&] { parallel = mc_true_cdf_column(model, {0}, 0, opt, 7); });
    const bool same = serial.t == parallel.t && serial.dropped == parallel.dropped;
    std::printf("%-28s %10ld %12.2f %12.2f %7.2fx  %s\n", "replicate sweep (n=64)", n_mc,
                ts * 1e3, tp * 1e3, ts / tp, same ? "bitwise equal" : "MISMATCH");
    if (!same) return 1;
  }

  return 0;
}
