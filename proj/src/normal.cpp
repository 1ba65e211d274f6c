#include "eigenwise/normal.hpp"

#include <cmath>

namespace eigenwise {

namespace {

// Rational coefficients for the three-region erf/erfc scheme (Cody,
// "Rational Chebyshev approximation for the error function").
const double A[5] = {3.16112374387056560e0, 1.13864154151050156e2, 3.77485237685302021e2,
                     3.20937758913846947e3, 1.85777706184603153e-1};
const double B[4] = {2.36012909523441209e1, 2.44024637934444173e2, 1.28261652607737228e3,
                     2.84423683343917062e3};
const double C[9] = {5.64188496988670089e-1, 8.88314979438837594e0, 6.61191906371416295e1,
                     2.98635138197400131e2,  8.81952221241769090e2, 1.71204761263407058e3,
                     2.05107837782607147e3,  1.23033935479799725e3, 2.15311535474403846e-8};
const double D[8] = {1.57449261107098347e1, 1.17693950891312499e2, 5.37181101862009858e2,
                     1.62138957456669019e3, 3.29079923573345963e3, 4.36261909014324716e3,
                     3.43936767414372164e3, 1.23033935480374942e3};
const double P[6] = {3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
                     1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
const double Q[5] = {2.56852019228982242e0, 1.87295284992346047e0, 5.27905102951428412e-1,
                     6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628694807945156077e-1;

// erf on |x| <= 0.46875
double erf_small(double x) {
  const double z = x * x;
  double xnum = A[4] * z;
  double xden = z;
  for (int i = 0; i < 3; ++i) {
    xnum = (xnum + A[i]) * z;
    xden = (xden + B[i]) * z;
  }
  return x * (xnum + A[3]) / (xden + B[3]);
}

// erfc on 0.46875 < y <= 4
double erfc_mid(double y) {
  double xnum = C[8] * y;
  double xden = y;
  for (int i = 0; i < 7; ++i) {
    xnum = (xnum + C[i]) * y;
    xden = (xden + D[i]) * y;
  }
  const double result = (xnum + C[7]) / (xden + D[7]);
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del) * result;
}

// erfc on y > 4
double erfc_tail(double y) {
  if (y >= 26.6) return 0.0;  // below double underflow of exp(-y^2)
  const double ysq = 1.0 / (y * y);
  double xnum = P[5] * ysq;
  double xden = ysq;
  for (int i = 0; i < 4; ++i) {
    xnum = (xnum + P[i]) * ysq;
    xden = (xden + Q[i]) * ysq;
  }
  double result = ysq * (xnum + P[4]) / (xden + Q[4]);
  result = (kInvSqrtPi - result) / y;
  const double yt = std::trunc(y * 16.0) / 16.0;
  const double del = (y - yt) * (y + yt);
  return std::exp(-yt * yt) * std::exp(-del) * result;
}

}  // namespace

double erfc_rational(double x) {
  const double y = std::fabs(x);
  double r;
  if (y <= 0.46875)
    return 1.0 - erf_small(x);
  else if (y <= 4.0)
    r = erfc_mid(y);
  else
    r = erfc_tail(y);
  return (x < 0.0) ? 2.0 - r : r;
}

double normal_cdf(double x) { return 0.5 * erfc_rational(-x * 0.70710678118654752440084436210485); }

double normal_pdf(double x) {
  return 0.39894228040143267793994605993438 * std::exp(-0.5 * x * x);
}

}  // namespace eigenwise
