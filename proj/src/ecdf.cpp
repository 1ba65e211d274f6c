#include <algorithm>
#include <cmath>

#include "eigenwise/errors.hpp"
#include "eigenwise/montecarlo.hpp"

namespace eigenwise {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw ConfigError("EmpiricalCdf: need at least one sample");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double tv_distance(const EmpiricalCdf& F, const EmpiricalCdf& G) {
  // Every constancy interval of |F - G| except (-inf, first jump), where both
  // vanish, begins at a sample of F or G; evaluating there covers them all.
  double best = 0.0;
  for (const double x : F.samples()) best = std::max(best, std::fabs(F(x) - G(x)));
  for (const double x : G.samples()) best = std::max(best, std::fabs(F(x) - G(x)));
  return best;
}

double tv_distance(const EmpiricalCdf& F, const std::function<double(double)>& cdf,
                   const std::vector<double>& curve_critical_points) {
  double best = 0.0;
  for (const double x : F.samples()) {
    const double g = cdf(x);
    best = std::max(best, std::fabs(F(x) - g));
    best = std::max(best, std::fabs(F.left_limit(x) - g));
  }
  for (const double c : curve_critical_points) best = std::max(best, std::fabs(F(c) - cdf(c)));
  return best;
}

double tv_distance(const EmpiricalCdf& F, const EdgeworthCurve& curve) {
  return tv_distance(
      F, [&curve](double x) { return curve(x); }, curve.critical_points());
}

}  // namespace eigenwise
