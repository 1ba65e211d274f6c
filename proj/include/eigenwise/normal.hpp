#pragma once

namespace eigenwise {

// Complementary error function by piecewise rational approximation
// (Cody-style three-region scheme); absolute error below 1e-15 on the real
// line, validated against a quadrature oracle in the tests.
double erfc_rational(double x);

// Standard normal CDF and density.
double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace eigenwise
