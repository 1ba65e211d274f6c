#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "eigenwise/errors.hpp"

namespace eigenwise {

// Dense symmetric matrix, full mirrored row-major storage.  Mutation goes
// through set(), which writes both triangles, so the invariant a(i,j)=a(j,i)
// holds exactly (bitwise) at all times.
class SymmetricMatrix {
public:
  SymmetricMatrix() : n_(0) {}
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 0) throw ShapeError("matrix dimension must be nonnegative");
  }

  // Adopts full storage; rejects asymmetry beyond `tol` and non-finite entries.
  static SymmetricMatrix from_full(int n, std::vector<double> full, double tol = 1e-12) {
    if (full.size() != static_cast<std::size_t>(n) * n)
      throw ShapeError("full storage size does not match dimension");
    SymmetricMatrix m;
    m.n_ = n;
    m.a_ = std::move(full);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double x = m.a_[static_cast<std::size_t>(i) * n + j];
        const double y = m.a_[static_cast<std::size_t>(j) * n + i];
        if (!std::isfinite(x) || !std::isfinite(y))
          throw DomainError("matrix entry is not finite");
        if (std::fabs(x - y) > tol) throw ShapeError("matrix is not symmetric");
        m.a_[static_cast<std::size_t>(j) * n + i] = x;  // mirror exactly
      }
    return m;
  }

  int n() const { return n_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& mutable_data() { return a_; }

  // y = A x
  void matvec(const double* x, double* y) const {
    for (int i = 0; i < n_; ++i) {
      const double* ai = row(i);
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += ai[j] * x[j];
      y[i] = s;
    }
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::fmax(m, std::fabs(v));
    return m;
  }

private:
  int n_;
  std::vector<double> a_;
};

// Dense rectangular matrix, row-major.  Used by the rectangular denoising path.
class RectMatrix {
public:
  RectMatrix() : rows_(0), cols_(0) {}
  RectMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be nonnegative");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  const std::vector<double>& data() const { return a_; }

private:
  int rows_, cols_;
  std::vector<double> a_;
};

inline double dot(const double* x, const double* y, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace eigenwise
