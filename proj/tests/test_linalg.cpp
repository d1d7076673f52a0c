#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "traction/linalg.hpp"

using namespace traction;

namespace {

Mat random_spd(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = u(rng);
  Mat spd = a * a.transposed();
  for (std::size_t i = 0; i < n; ++i) spd(i, i) += 0.1;
  return spd;
}

}  // namespace

TEST_CASE("matrix product and transpose") {
  Mat a(2, 3);
  a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
  a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
  Vec x{1.0, 0.0, -1.0};
  Vec y = a * x;
  CHECK(y[0] == doctest::Approx(-2.0));
  CHECK(y[1] == doctest::Approx(-2.0));

  Mat ata = a.transposed() * a;
  CHECK(ata.rows() == 3);
  CHECK(ata(0, 0) == doctest::Approx(17.0));
  CHECK(ata(2, 1) == doctest::Approx(2 * 3 + 5 * 6));
}

TEST_CASE("cholesky reconstructs SPD matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const Mat a = random_spd(rng, n);
    const Mat l = cholesky(a);
    const Mat back = l * l.transposed();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        CHECK(back(r, c) == doctest::Approx(a(r, c)).epsilon(1e-9));
  }
}

TEST_CASE("cholesky of the zero matrix is zero") {
  const Mat z(4, 4);
  const Mat l = cholesky(z);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(l(r, c) == 0.0);
}

TEST_CASE("cholesky accepts semi-definite matrices") {
  Mat a(3, 3);
  a(0, 0) = 4.0;  // rank 1: diag(4, 0, 0)
  const Mat l = cholesky(a);
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(1, 1) == 0.0);
  CHECK(l(2, 2) == 0.0);
}

TEST_CASE("cholesky rejects indefinite matrices") {
  Mat a = Mat::identity(3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(cholesky(a), CholeskyError);
}

TEST_CASE("chol_solve inverts the factorized system") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Mat a = random_spd(rng, n);
    const Mat l = cholesky(a);

    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Vec b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = u(rng);

    const Vec x = chol_solve(l, b);
    const Vec back = a * x;
    for (std::size_t i = 0; i < n; ++i)
      CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-8));
  }
}

TEST_CASE("symmetrize averages off-diagonal pairs") {
  Mat a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 3.0;
  a.symmetrize();
  CHECK(a(0, 1) == doctest::Approx(2.0));
  CHECK(a(1, 0) == doctest::Approx(2.0));
}
