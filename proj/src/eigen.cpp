#include "eigenwise/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eigenwise/errors.hpp"

namespace eigenwise {
namespace {

constexpr int kMaxSweepsPerValue = 30;

// Householder reduction to tridiagonal form with accumulation of the
// orthogonal transformation (EISPACK tred2 lineage).  On exit `a` holds the
// accumulated transformation, d the diagonal, e the subdiagonal (e[0] = 0).
void tred2(int n, std::vector<double>& a, std::vector<double>& d, std::vector<double>& e) {
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          A(j, i) = A(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
        for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
      }
    }
    d[i] = A(i, i);
    A(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
  }
}

// Implicit QL with Wilkinson shifts on the tridiagonal (d, e).  `zt` holds
// the transformation TRANSPOSED (row k = accumulated vector k) so the Givens
// updates run over two contiguous rows.  Capped at kMaxSweepsPerValue sweeps
// per eigenvalue, i.e. at most 30n in total.
void tql2(int n, std::vector<double>& d, std::vector<double>& e, std::vector<double>& zt,
          double max_abs_input) {
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweepsPerValue) {
          std::ostringstream msg;
          msg << "tridiagonal QL failed to converge: n=" << n << ", eigenvalue index " << l
              << ", residual off-diagonal " << std::fabs(e[l]) << ", max |A_ij| "
              << max_abs_input;
          throw NonConvergenceError(msg.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          double* __restrict zi = zt.data() + static_cast<std::size_t>(i) * n;
          double* __restrict zi1 = zt.data() + static_cast<std::size_t>(i + 1) * n;
          for (int k = 0; k < n; ++k) {
            f = zi1[k];
            zi1[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Largest-magnitude entry positive; ties broken by lowest index.
void canonical_sign(int n, double* col) {
  int am = 0;
  double best = std::fabs(col[0]);
  for (int i = 1; i < n; ++i) {
    const double v = std::fabs(col[i]);
    if (v > best) {
      best = v;
      am = i;
    }
  }
  if (col[am] < 0.0)
    for (int i = 0; i < n; ++i) col[i] = -col[i];
}

}  // namespace

FullEigh full_eigh(const SymmetricMatrix& A) {
  const int n = A.n();
  if (n < 1) throw ShapeError("full_eigh needs a nonempty matrix");

  std::vector<double> z = A.data();
  std::vector<double> d(n), e(n);
  if (n == 1) {
    d[0] = z[0];
    z[0] = 1.0;
  } else {
    tred2(n, z, d, e);
    std::vector<double> zt(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        zt[static_cast<std::size_t>(j) * n + i] = z[static_cast<std::size_t>(i) * n + j];
    tql2(n, d, e, zt, A.max_abs());
    z.swap(zt);  // z now holds vectors as rows
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] > d[y]; });

  FullEigh out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    out.values[k] = d[j];
    double* col = out.vectors.data() + static_cast<std::size_t>(k) * n;
    if (n == 1) {
      col[0] = 1.0;
    } else {
      std::copy_n(z.data() + static_cast<std::size_t>(j) * n, n, col);
    }
    canonical_sign(n, col);
  }
  return out;
}

TruncatedEigen truncated_spectral(const SymmetricMatrix& A, int p, int q) {
  if (p < 0 || q < 0) throw ConfigError("eigenpair counts must be nonnegative");
  const FullEigh full = full_eigh(A);
  const int n = full.n;
  if (p + q > n) throw RankError("requested more eigenpairs than the dimension");

  double amax = 0.0;
  for (double v : full.values) amax = std::fmax(amax, std::fabs(v));
  const double tol = 1e-10 * std::fmax(1.0, amax);

  int n_pos = 0;
  int n_neg = 0;
  for (double v : full.values) {
    if (v > tol) ++n_pos;
    if (v < -tol) ++n_neg;
  }
  if (p > n_pos) {
    std::ostringstream msg;
    msg << "requested " << p << " positive eigenpairs but only " << n_pos
        << " exceed tolerance " << tol;
    throw RankError(msg.str());
  }
  if (q > n_neg) {
    std::ostringstream msg;
    msg << "requested " << q << " negative eigenpairs but only " << n_neg
        << " exceed tolerance " << tol;
    throw RankError(msg.str());
  }

  TruncatedEigen t;
  t.n = n;
  t.p = p;
  t.q = q;
  t.lambda.resize(p + q);
  t.U.resize(static_cast<std::size_t>(n) * (p + q));
  for (int k = 0; k < p; ++k) {
    t.lambda[k] = full.values[k];
    std::copy_n(full.col(k), n, t.U.data() + static_cast<std::size_t>(k) * n);
  }
  for (int k = 0; k < q; ++k) {
    const int src = n - q + k;
    t.lambda[p + k] = full.values[src];
    std::copy_n(full.col(src), n, t.U.data() + static_cast<std::size_t>(p + k) * n);
  }
  return t;
}

TruncatedEigen make_truncated(int n, int p, int q, std::vector<double> lambda,
                              std::vector<double> U) {
  if (static_cast<int>(lambda.size()) != p + q)
    throw ShapeError("lambda size does not match p+q");
  if (U.size() != static_cast<std::size_t>(n) * (p + q))
    throw ShapeError("eigenvector storage does not match n*(p+q)");
  TruncatedEigen t;
  t.n = n;
  t.p = p;
  t.q = q;
  t.lambda = std::move(lambda);
  t.U = std::move(U);
  return t;
}

SignAlignment align_signs(const TruncatedEigen& ref, const TruncatedEigen& est) {
  if (ref.n != est.n || ref.d() != est.d())
    throw ShapeError("sign alignment needs matching dimensions");
  SignAlignment s;
  s.sign.resize(ref.d());
  for (int k = 0; k < ref.d(); ++k) {
    const double ip = dot(ref.col(k), est.col(k), ref.n);
    s.sign[k] = (ip < 0.0) ? -1.0 : 1.0;
  }
  return s;
}

SymmetricMatrix symmetric_dilation(const RectMatrix& M) {
  const int p1 = M.rows();
  const int p2 = M.cols();
  SymmetricMatrix B(p1 + p2);
  for (int i = 0; i < p1; ++i)
    for (int j = 0; j < p2; ++j) B.set(i, p1 + j, M(i, j));
  return B;
}

double eigengap(const std::vector<double>& lambda) {
  if (lambda.empty()) throw ConfigError("eigengap of an empty spectrum");
  double g = std::fabs(lambda[0]);
  for (std::size_t k = 0; k + 1 < lambda.size(); ++k) {
    if (lambda[k] < lambda[k + 1])
      throw ShapeError("eigengap input must be in decreasing order");
    g = std::fmin(g, lambda[k] - lambda[k + 1]);
  }
  for (double v : lambda) g = std::fmin(g, std::fabs(v));
  return g;
}

}  // namespace eigenwise
