// Small dense matrices over either scalar kind, with pivoted Gaussian
// elimination. Exact over rationals; partial pivoting over doubles.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shbif/rational.hpp"

namespace shbif {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, S(0)) {
    if (rows < 0 || cols < 0) throw std::domain_error("negative matrix shape");
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  friend DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
    x.check_same_shape(y);
    DenseMatrix out(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] + y.a_[i];
    return out;
  }
  friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
    x.check_same_shape(y);
    DenseMatrix out(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }
  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols_ != y.rows_) throw std::domain_error("matrix shape mismatch");
    DenseMatrix out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      for (int k = 0; k < x.cols_; ++k) {
        const S& v = x(i, k);
        if (v == S(0)) continue;
        for (int j = 0; j < y.cols_; ++j) out(i, j) += v * y(k, j);
      }
    }
    return out;
  }
  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& v : a_) best = std::max(best, std::fabs(scalar_to_double_m(v)));
    return best;
  }

  DenseMatrix<double> to_float() const {
    DenseMatrix<double> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = scalar_to_double_m((*this)(i, j));
    return out;
  }

 private:
  static double scalar_to_double_m(double v) { return v; }
  static double scalar_to_double_m(const Rational& v) { return to_double(v); }

  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::domain_error("matrix shape mismatch");
    }
  }

  int rows_, cols_;
  std::vector<S> a_;
};

// Gaussian elimination with max-abs pivoting. Over rationals the singularity
// test is exact; over doubles a pivot below eps times the largest entry of the
// input counts as singular.
template <class S>
std::optional<DenseMatrix<S>> try_inverse(DenseMatrix<S> m, double eps = 1e-12) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse needs a square matrix");
  const int n = m.rows();
  const double floor_d = eps * std::max(m.max_abs(), 1.0);
  DenseMatrix<S> inv = DenseMatrix<S>::identity(n);

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (abs_val(m(r, col)) > abs_val(m(pivot, col))) pivot = r;
    }
    const bool singular = [&] {
      if constexpr (std::is_same_v<S, Rational>) {
        return m(pivot, col) == S(0);
      } else {
        return std::fabs(m(pivot, col)) <= floor_d;
      }
    }();
    if (singular) return std::nullopt;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const S p = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const S f = m(r, col);
      if (f == S(0)) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace shbif
