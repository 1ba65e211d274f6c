#include <cmath>
#include <vector>

#include "doctest.h"
#include "eigenwise/edgeworth.hpp"
#include "eigenwise/eigen.hpp"
#include "eigenwise/errors.hpp"
#include "eigenwise/estimators.hpp"
#include "eigenwise/models.hpp"
#include "eigenwise/noise.hpp"
#include "eigenwise/normal.hpp"
#include "test_oracles.hpp"

using namespace eigenwise;

TEST_CASE("standard normal point values and symmetry") {
  const auto [Phi0, phi0] = std_normal(0.0);
  CHECK(Phi0 == 0.5);
  CHECK(std::fabs(phi0 - 0.3989422804014327) <= 1e-15);
  CHECK(std::fabs(normal_cdf(1.959963985) - 0.975) <= 1e-9);
  for (double x = 0.0; x <= 12.0; x += 0.173)
    CHECK(std::fabs(normal_cdf(-x) - (1.0 - normal_cdf(x))) <= 1e-14);
}

TEST_CASE("normal CDF against quadrature on a thousand-point grid") {
  for (int t = 0; t < 1000; ++t) {
    const double x = -8.0 + 16.0 * t / 999.0;
    CHECK(std::fabs(normal_cdf(x) - oracle::normal_cdf_quadrature(x)) <= 1e-11);
  }
}

TEST_CASE("skew-corrected CDF arithmetic") {
  SUBCASE("zero skew reduces to the normal CDF exactly") {
    for (double x = -6.0; x <= 6.0; x += 0.37) CHECK(edgeworth_cdf(x, 0.0) == normal_cdf(x));
  }
  SUBCASE("pinned value at the origin") {
    CHECK(std::fabs(edgeworth_cdf(0.0, 0.1) - 0.50664903800669) <= 1e-12);
  }
  SUBCASE("tails settle at zero and one") {
    for (double kappa : {-1.0, -0.5, 0.1, 1.0}) {
      CHECK(std::fabs(edgeworth_cdf(8.0, kappa) - 1.0) <= 1e-6);
      CHECK(std::fabs(edgeworth_cdf(-8.0, kappa)) <= 1e-6);
    }
  }
  SUBCASE("deviation from normal has the sign of the skew everywhere") {
    for (double kappa : {-0.7, 0.05, 1.3})
      for (double x = -10.0; x <= 10.0; x += 0.11) {
        const double diff = edgeworth_cdf(x, kappa) - normal_cdf(x);
        CHECK((diff == 0.0 || (diff > 0.0) == (kappa > 0.0)));
      }
  }
}

TEST_CASE("curve derivative is bounded via a searched constant") {
  // |G'(x)| = phi(x) |1 + kappa (3x - 2x^3)/6| <= phi(0) (1 + |kappa| c) with
  // c = sup_x phi(x)|3x - 2x^3|/(6 phi(0)).
  double c = 0.0;
  for (double x = -10.0; x <= 10.0; x += 1e-3)
    c = std::max(c, normal_pdf(x) * std::fabs(3.0 * x - 2.0 * x * x * x) / 6.0);
  c /= normal_pdf(0.0);
  CHECK(c <= 2.0);
  for (double kappa : {-0.2, 0.2}) {
    const double bound = normal_pdf(0.0) * (1.0 + std::fabs(kappa) * c) + 1e-12;
    for (double x = -10.0; x <= 10.0; x += 7e-3) {
      const double deriv = normal_pdf(x) * (1.0 + kappa * (3.0 * x - 2.0 * x * x * x) / 6.0);
      CHECK(std::fabs(deriv) <= bound);
      // spot-check the closed-form derivative against a central difference
    }
  }
  const double h = 1e-6;
  for (double x : {-2.3, -0.4, 0.9, 3.1}) {
    const double num = (edgeworth_cdf(x + h, 0.2) - edgeworth_cdf(x - h, 0.2)) / (2.0 * h);
    const double ana = normal_pdf(x) * (1.0 + 0.2 * (3.0 * x - 2.0 * x * x * x) / 6.0);
    CHECK(std::fabs(num - ana) <= 1e-8);
  }
}

TEST_CASE("curve stationary points solve the cubic exactly") {
  CHECK(EdgeworthCurve{0.0}.critical_points().empty());
  for (double kappa : {0.5, -0.5, 2.0, 10.0, -10.0, 0.05}) {
    const auto pts = EdgeworthCurve{kappa}.critical_points();
    CHECK(!pts.empty());
    for (std::size_t t = 0; t < pts.size(); ++t) {
      if (t > 0) CHECK(pts[t - 1] < pts[t]);
      CHECK(std::fabs(1.0 + kappa * (3.0 * pts[t] - 2.0 * pts[t] * pts[t] * pts[t]) / 6.0) <=
            1e-12);
    }
    // one stationary point when the discriminant is positive, three otherwise
    const double disc = 9.0 / (4.0 * kappa * kappa) - 0.125;
    CHECK(pts.size() == (disc > 0.0 ? 1u : 3u));
  }
}

TEST_CASE("skewness sum closed forms") {
  SUBCASE("vanishes for symmetric noise") {
    std::vector<double> third(10, 0.0), u(10, 0.3);
    CHECK(kappa_sum(third.data(), u.data(), 10, 1.0, 2.0) == 0.0);
  }
  SUBCASE("vanishes on the signed block eigenvector") {
    const int n = 12;
    const double rho = 0.2;
    const auto model = build_sbm(n, 3.0, 1.0, 2.0);
    const auto mom = noise_moments(NoiseSpec::discrete_three_point(rho), n);
    const double s = std::sqrt(variance_population(mom.variance, model.eig, 0, 1));
    const double k2 = kappa_sum(mom.third.row(0), model.eig.col(1), n, s, model.eig.lambda[1]);
    CHECK(std::fabs(k2) <= 1e-12);
  }
  SUBCASE("flat eigenvector with exponential noise gives two over sqrt n") {
    const int n = 100;
    const double rho = 0.3, lambda = 4.0;
    std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const auto mom = noise_moments(NoiseSpec::centered_exponential(rho), n);
    const double s = std::sqrt(rho) / lambda;  // homogeneous variance, unit vector
    const double k = kappa_sum(mom.third.row(0), u.data(), n, s, lambda);
    CHECK(std::fabs(k - 0.2) <= 1e-12);
  }
  SUBCASE("odd in the noise law") {
    std::vector<double> third = {0.4, -1.0, 2.5, 0.0, 3.3};
    std::vector<double> u = {0.1, -0.5, 0.4, 0.7, -0.2};
    const double k1 = kappa_sum(third.data(), u.data(), 5, 0.8, 1.7);
    for (double& t : third) t = -t;
    CHECK(kappa_sum(third.data(), u.data(), 5, 0.8, 1.7) == -k1);
  }
  SUBCASE("degenerate scales are rejected") {
    std::vector<double> third(4, 1.0), u(4, 0.5);
    CHECK_THROWS_AS(kappa_sum(third.data(), u.data(), 4, 0.0, 1.0), DegenerateError);
    CHECK_THROWS_AS(kappa_sum(third.data(), u.data(), 4, 1.0, 0.0), DegenerateError);
  }
}

TEST_CASE("residual-based curve estimate") {
  SUBCASE("zero residuals are degenerate") {
    const auto model = build_sbm(10, 3.0, 1.0, 2.0);
    const auto eig = truncated_spectral(model.P, model.eig.p, model.eig.q);
    CHECK_THROWS_AS(empirical_edgeworth(model.P, model.P, eig, 0, 0), DegenerateError);
  }
  SUBCASE("sign follows the residual cube sum") {
    const int n = 4;
    // Fixed residual row against a flat eigenvector; cube sum is positive.
    const auto A = SymmetricMatrix::from_full(
        n, {2.0, -1.0, -1.0, 0.0, -1.0, 0.5, 0.0, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.5});
    const SymmetricMatrix Ph(n);
    std::vector<double> u(n, 0.5);
    const auto eig = make_truncated(n, 1, 0, {2.0}, u);
    const auto curve = empirical_edgeworth(A, Ph, eig, 0, 0);
    CHECK(curve.kappa > 0.0);

    // Negating the residuals flips the estimate exactly.
    std::vector<double> neg = A.data();
    for (double& v : neg) v = -v;
    const auto An = SymmetricMatrix::from_full(n, neg);
    CHECK(empirical_edgeworth(An, Ph, eig, 0, 0).kappa == -curve.kappa);
  }
}

TEST_CASE("smoothing scale formulas") {
  CHECK(smoother_scale(SmootherKind::graph, 0.0, 0.5, 50, 0.0).sd == 0.0);
  const double sd = smoother_scale(SmootherKind::graph, 0.0, 0.25, 100, 1.0).sd;
  CHECK(std::fabs(sd - 0.429193) <= 1e-6);
  CHECK(std::fabs(sd - std::sqrt(std::log(100.0) / 25.0)) <= 1e-14);
  const double beta = 0.21, rho = 0.04, tau = 1.7;
  const double g = smoother_scale(SmootherKind::general, beta, rho, 300, tau).sd;
  CHECK(std::fabs(g - tau * std::sqrt(beta * beta * std::log(300.0) / (300.0 * rho * rho * rho))) <=
        1e-14 * (1.0 + g));
  CHECK_THROWS_AS(smoother_scale(SmootherKind::graph, 0.0, 0.5, 1, 1.0), ConfigError);
  CHECK_THROWS_AS(smoother_scale(SmootherKind::graph, 0.0, 0.0, 10, 1.0), ConfigError);
  CHECK_THROWS_AS(smoother_scale(SmootherKind::graph, 0.0, 0.5, 10, -1.0), ConfigError);
}
