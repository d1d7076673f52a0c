#include "traction/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "traction/kernels.hpp"

namespace traction {
namespace {

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("size mismatch in ") + what);
}

}  // namespace

Vec& Vec::operator+=(const Vec& o) {
  check_same(size(), o.size(), "Vec+=");
  for (std::size_t i = 0; i < size(); ++i) d_[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  check_same(size(), o.size(), "Vec-=");
  for (std::size_t i = 0; i < size(); ++i) d_[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double k) {
  for (double& v : d_) v *= k;
  return *this;
}

bool Vec::all_finite() const {
  for (double v : d_)
    if (!std::isfinite(v)) return false;
  return true;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double k, Vec a) { return a *= k; }

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vec Mat::diag() const {
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  Vec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
  return d;
}

double Mat::trace() const {
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

void Mat::symmetrize() {
  if (rows_ != cols_) throw std::invalid_argument("symmetrize: not square");
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c) {
      const double m = 0.5 * ((*this)(r, c) + (*this)(c, r));
      (*this)(r, c) = m;
      (*this)(c, r) = m;
    }
}

bool Mat::all_finite() const {
  for (double v : d_)
    if (!std::isfinite(v)) return false;
  return true;
}

Mat& Mat::operator+=(const Mat& o) {
  check_same(d_.size(), o.d_.size(), "Mat+=");
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  check_same(d_.size(), o.d_.size(), "Mat-=");
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
  return *this;
}

Mat& Mat::operator*=(double k) {
  for (double& v : d_) v *= k;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double k, Mat a) { return a *= k; }

Mat operator*(const Mat& a, const Mat& b) {
  check_same(a.cols(), b.rows(), "Mat*Mat");
  Mat out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double* out_row = out.row(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double f = a(r, k);
      const double* b_row = b.row(k);
      for (std::size_t c = 0; c < b.cols(); ++c) out_row[c] += f * b_row[c];
    }
  }
  return out;
}

Vec operator*(const Mat& a, const Vec& x) {
  check_same(a.cols(), x.size(), "Mat*Vec");
  Vec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    out[r] = kernels::dot(a.row(r), x.data(), a.cols());
  return out;
}

Mat cholesky(const Mat& a) {
  if (a.rows() != a.cols()) throw CholeskyError("cholesky: not square");
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_diag = std::max(max_diag, std::fabs(a(i, i)));
  const double tol = 1e-12 * std::max(max_diag, 1e-300);

  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j) - kernels::dot(l.row(j), l.row(j), j);
    if (d > tol) {
      const double ljj = std::sqrt(d);
      l(j, j) = ljj;
      for (std::size_t i = j + 1; i < n; ++i)
        l(i, j) = (a(i, j) - kernels::dot(l.row(i), l.row(j), j)) / ljj;
    } else if (d >= -tol) {
      // Semi-definite pivot: valid only if the rest of the column vanishes.
      l(j, j) = 0.0;
      for (std::size_t i = j + 1; i < n; ++i) {
        const double r = a(i, j) - kernels::dot(l.row(i), l.row(j), j);
        if (std::fabs(r) > 1e3 * tol)
          throw CholeskyError("cholesky: matrix not positive semi-definite");
        l(i, j) = 0.0;
      }
    } else {
      throw CholeskyError("cholesky: negative pivot");
    }
  }
  return l;
}

namespace {

// Forward/backward substitution with L possibly semi-definite.
void solve_in_place(const Mat& l, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] - kernels::dot(l.row(i), x, i);
    if (l(i, i) == 0.0) {
      if (std::fabs(v) > 1e-10 * (1.0 + std::fabs(x[i])))
        throw CholeskyError("chol_solve: singular system");
      x[i] = 0.0;
    } else {
      x[i] = v / l(i, i);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) v -= l(j, ii) * x[j];
    if (l(ii, ii) == 0.0) {
      if (std::fabs(v) > 1e-10 * (1.0 + std::fabs(x[ii])))
        throw CholeskyError("chol_solve: singular system");
      x[ii] = 0.0;
    } else {
      x[ii] = v / l(ii, ii);
    }
  }
}

}  // namespace

Vec chol_solve(const Mat& l, const Vec& b) {
  check_same(l.rows(), b.size(), "chol_solve");
  Vec x = b;
  solve_in_place(l, x.data(), x.size());
  return x;
}

Mat chol_solve(const Mat& l, const Mat& b) {
  check_same(l.rows(), b.rows(), "chol_solve");
  Mat x = b;
  const std::size_t n = b.rows();
  std::vector<double> col(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = b(r, c);
    solve_in_place(l, col.data(), n);
    for (std::size_t r = 0; r < n; ++r) x(r, c) = col[r];
  }
  return x;
}

}  // namespace traction
