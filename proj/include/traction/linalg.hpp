// Small dense vectors and matrices sized for filter work (n <= a few dozen).
// Row-major storage so matrices can feed the kernels layer directly.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace traction {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : d_(n, fill) {}
  Vec(std::initializer_list<double> init) : d_(init) {}

  std::size_t size() const { return d_.size(); }
  double& operator[](std::size_t i) { return d_[i]; }
  double operator[](std::size_t i) const { return d_[i]; }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double k);
  bool all_finite() const;

 private:
  std::vector<double> d_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double k, Vec a);

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

  static Mat identity(std::size_t n);
  static Mat diagonal(const Vec& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return d_[r * cols_ + c];
  }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }
  double* row(std::size_t r) { return d_.data() + r * cols_; }
  const double* row(std::size_t r) const { return d_.data() + r * cols_; }

  Mat transposed() const;
  Vec diag() const;
  double trace() const;
  void symmetrize();  // A <- (A + A^T)/2, square only
  bool all_finite() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double k);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> d_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double k, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);

struct CholeskyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lower-triangular factor L with A = L L^T. Tolerates positive
// semi-definite input (zero pivots produce zero columns); throws
// CholeskyError when A is indefinite beyond tolerance.
Mat cholesky(const Mat& a);

// Solve A x = b given the factor L from cholesky(A). Zero pivots are only
// valid when the corresponding right-hand side entries vanish; otherwise a
// CholeskyError is raised.
Vec chol_solve(const Mat& l, const Vec& b);
Mat chol_solve(const Mat& l, const Mat& b);  // column-wise solve of A X = B

}  // namespace traction
