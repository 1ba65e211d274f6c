#include "eigenwise/models.hpp"

#include <cmath>

#include "eigenwise/errors.hpp"
#include "eigenwise/rng.hpp"

namespace eigenwise {

ModelInstance build_sbm(int n, double a, double b, double delta) {
  if (n < 2 || n % 2 != 0) throw ConfigError("two-block model needs even n >= 2");
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("block rates must be positive");
  if (a == b) throw ConfigError("a = b collapses the second eigenvalue to zero");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");

  const int h = n / 2;
  SymmetricMatrix P(n);
  const double win = a * delta / n;
  const double cross = b * delta / n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const bool same = (i < h) == (j < h);
      P.set(i, j, same ? win : cross);
    }

  const double l1 = delta * (a + b) / 2.0;
  const double l2 = delta * (a - b) / 2.0;
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> U(static_cast<std::size_t>(n) * 2);
  for (int i = 0; i < n; ++i) {
    U[i] = r;
    U[static_cast<std::size_t>(n) + i] = (i < h) ? r : -r;
  }

  ModelInstance m;
  m.P = std::move(P);
  m.eig = make_truncated(n, l2 > 0.0 ? 2 : 1, l2 < 0.0 ? 1 : 0, {l1, l2}, std::move(U));
  return m;
}

ModelInstance build_rank_one_blocks(int n, double hi, double lo) {
  if (n < 2 || n % 2 != 0) throw ConfigError("rank-one block profile needs even n >= 2");
  if (hi == 0.0 && lo == 0.0) throw ConfigError("profile levels cannot both be zero");

  const int h = n / 2;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = (i < h) ? hi : lo;
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double norm = std::sqrt(norm2);

  SymmetricMatrix P(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) P.set(i, j, v[i] * v[j]);

  std::vector<double> U(n);
  for (int i = 0; i < n; ++i) U[i] = v[i] / norm;
  if (U[0] < 0.0 || (U[0] == 0.0 && U[n - 1] < 0.0))
    for (double& x : U) x = -x;  // canonical sign

  ModelInstance m;
  m.P = std::move(P);
  m.eig = make_truncated(n, 1, 0, {norm2}, std::move(U));
  return m;
}

namespace {

// Orthonormal p x r frame from seeded Gaussians (modified Gram-Schmidt),
// retried until every column satisfies the delocalization bound.
std::vector<double> delocalized_frame(int p, int r, std::uint64_t seed, std::uint64_t tag) {
  constexpr int kMaxRetries = 100;
  const double bound = 4.0 / std::sqrt(static_cast<double>(p));
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const CounterRng rng(hash64({seed, tag, static_cast<std::uint64_t>(attempt)}),
                         stream::gaussian_frame);
    std::vector<double> F(static_cast<std::size_t>(p) * r);
    for (std::size_t t = 0; t < F.size(); ++t) F[t] = rng.gaussian(t);
    bool ok = true;
    for (int k = 0; k < r && ok; ++k) {
      double* col = F.data() + static_cast<std::size_t>(k) * p;
      for (int m = 0; m < k; ++m) {
        const double* prev = F.data() + static_cast<std::size_t>(m) * p;
        const double ip = dot(col, prev, p);
        for (int i = 0; i < p; ++i) col[i] -= ip * prev[i];
      }
      const double nrm = std::sqrt(dot(col, col, p));
      if (nrm < 1e-8) {
        ok = false;
        break;
      }
      double maxabs = 0.0;
      for (int i = 0; i < p; ++i) {
        col[i] /= nrm;
        maxabs = std::fmax(maxabs, std::fabs(col[i]));
      }
      if (maxabs > bound) ok = false;
    }
    if (ok) return F;
  }
  throw ConfigError("could not draw delocalized singular vectors within 100 attempts");
}

}  // namespace

DenoisingModel build_denoising_model(int p1, int p2, int r, std::vector<double> sigmas,
                                     double rho, std::uint64_t seed) {
  if (p1 < 1 || p2 < 1) throw ConfigError("denoising dimensions must be positive");
  if (r < 1 || r > std::min(p1, p2)) throw ConfigError("rank must satisfy 1 <= r <= min(p1,p2)");
  if (static_cast<int>(sigmas.size()) != r)
    throw ConfigError("need exactly r singular values");
  for (int k = 0; k < r; ++k) {
    if (!(sigmas[k] > 0.0)) throw ConfigError("singular values must be positive");
    if (k > 0 && !(sigmas[k] < sigmas[k - 1]))
      throw ConfigError("singular values must be strictly decreasing");
  }
  if (!(rho > 0.0)) throw ConfigError("noise variance must be positive");

  DenoisingModel m;
  m.p1 = p1;
  m.p2 = p2;
  m.r = r;
  m.sigma = std::move(sigmas);
  m.rho = rho;
  m.U = delocalized_frame(p1, r, seed, hash64_str("left-frame"));
  m.V = delocalized_frame(p2, r, seed, hash64_str("right-frame"));
  m.noise = NoiseSpec::centered_exponential(rho);

  m.M = RectMatrix(p1, p2);
  for (int i = 0; i < p1; ++i)
    for (int j = 0; j < p2; ++j) {
      double s = 0.0;
      for (int k = 0; k < r; ++k) s += m.sigma[k] * m.u_col(k)[i] * m.v_col(k)[j];
      m.M(i, j) = s;
    }
  return m;
}

RectMatrix sample_denoising_obs(const DenoisingModel& model, std::uint64_t seed) {
  RectMatrix X(model.p1, model.p2);
  const CounterRng rng(seed, stream::noise_entries);
  for (int i = 0; i < model.p1; ++i)
    for (int j = 0; j < model.p2; ++j) {
      const std::uint64_t counter =
          static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(model.p2) + j;
      X(i, j) = model.M(i, j) + model.noise.sample_entry(rng, counter, i, j);
    }
  return X;
}

}  // namespace eigenwise
