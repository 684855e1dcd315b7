#include <doctest.h>

#include <random>

#include "graphck/errors.hpp"
#include "graphck/kappa.hpp"

using namespace graphck;

namespace {

RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows, long den) {
  RationalMatrix out(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long x : row) {
      out(i, j) = Rational(x, den);
      out(i, j).canonicalize();
      ++j;
    }
    ++i;
  }
  return out;
}

RationalMatrix random_rational(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  RationalMatrix a(n);
  for (Rational& x : a.data) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return a;
}

// K_{m,i} as the full sum over tau lengths t = i mod m of both windows, with
// kappa zero off the square.
Rational k_by_windows(std::size_t m, std::size_t a, std::size_t b, std::size_t i) {
  const long off_p = static_cast<long>(m);
  const long off_q = static_cast<long>(m + half_ceil(m));
  Rational sum = 0;
  for (long t = static_cast<long>(i); t < static_cast<long>(6 * m); t += static_cast<long>(m)) {
    const long x = static_cast<long>(a) + t, y = static_cast<long>(b) + t;
    sum += kappa_entry(m, x - off_p + 1, y - off_p + 1);
    sum += kappa_entry(m, x - off_q + 1, y - off_q + 1);
  }
  return sum;
}

}  // namespace

TEST_SUITE("kappa") {
  TEST_CASE("small matrices") {
    CHECK(kappa_matrix(2).entries == from_rows({{1, 1}, {1, 1}}, 2));
    CHECK(kappa_matrix(3).entries == from_rows({{1, 1, 1}, {1, 2, 1}, {1, 1, 1}}, 3));
    CHECK(kappa_matrix(4).entries ==
          from_rows({{1, 1, 1, 1}, {1, 2, 2, 1}, {1, 2, 2, 1}, {1, 1, 1, 1}}, 3));
    CHECK(kappa_matrix(1).entries == from_rows({{1}}, 2));
    CHECK(kappa_entry(4, 0, 1) == 0);
    CHECK(kappa_entry(4, 5, 5) == 0);
    CHECK(kappa0(4, 1, 2) == Rational(2, 3));
  }

  TEST_CASE("symmetry, range and positivity") {
    for (std::size_t m = 1; m <= 40; ++m) {
      KappaMatrix k = kappa_matrix(m);
      std::vector<double> f(m * m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const Rational& x = k.entries(i, j);
          CHECK(x == k.entries(j, i));
          CHECK(x == k.entries(m - 1 - i, j));
          CHECK(x > 0);
          CHECK(x <= 1);
          f[i * m + j] = x.get_d();
        }
      CHECK(min_symmetric_eigenvalue(f, m) >= -1e-9);
    }
  }

  TEST_CASE("Schur decomposition identity") {
    std::mt19937_64 rng(101);
    for (std::size_t m = 1; m <= 40; ++m) {
      const int trials = m <= 10 ? 5 : 1;
      for (int t = 0; t < trials; ++t) {
        RationalMatrix a = random_rational(rng, m);
        CHECK(schur_kappa(m, a) == schur_decomposition_sum(m, a));
      }
    }
  }

  TEST_CASE("Schur multiplication is positive and contractive") {
    std::mt19937_64 rng(103);
    std::normal_distribution<double> gauss;
    for (std::size_t m = 1; m <= 40; m += (m < 10 ? 1 : 7)) {
      const double bound = schur_norm_bound(m).get_d();
      for (int t = 0; t < 10; ++t) {
        std::vector<double> b(m * m), psd(m * m, 0.0);
        for (double& x : b) x = gauss(rng);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) psd[i * m + j] += b[i * m + k] * b[j * m + k];
        CHECK(min_symmetric_eigenvalue(schur_kappa(m, psd), m) >= -1e-9);

        const double nb = spectral_norm(b, m);
        for (double& x : b) x /= nb;
        CHECK(spectral_norm(schur_kappa(m, b), m) <= bound + 1e-9);
      }
    }
    CHECK(schur_norm_bound(4) == Rational(2, 3));
    CHECK(schur_norm_bound(5) == Rational(3, 4));
  }

  TEST_CASE("K coefficients: examples") {
    KCoefficients k = k_coefficients(2, 0, 0);
    REQUIRE(k.values.size() == 2);
    for (const Rational& v : k.values) CHECK(v == 1);
    CHECK(k.max_defect == 0);
    CHECK_THROWS_AS(k_coefficients(4, 0, 4), ContractViolation);
    CHECK(k_coefficients(4, 1, 2).max_defect == Rational(1, 3));
    CHECK(k_coefficients(8, 0, 2).max_defect == Rational(2, 5));
  }

  TEST_CASE("K coefficients agree with the window sums") {
    for (std::size_t m = 1; m <= 24; ++m)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          KCoefficients k = k_coefficients(m, a, b);
          REQUIRE(k.values.size() == m);
          for (std::size_t i = 0; i < m; ++i) CHECK(k.values[i] == k_by_windows(m, a, b, i));
        }
  }

  TEST_CASE("K coefficients: bounds") {
    for (std::size_t m = 1; m <= 40; ++m)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          KCoefficients k = k_coefficients(m, a, b);
          const std::size_t d = a > b ? a - b : b - a;
          Rational worst = 0;
          for (const Rational& v : k.values) {
            CHECK(v <= 1);
            CHECK(v >= 0);
            if (2 * d <= m) CHECK(v > 0);
            if (d == 0 && m % 2 == 0) CHECK(v == 1);
            worst = std::max(worst, Rational(1 - v));
          }
          CHECK(k.max_defect == worst);
        }
  }

  TEST_CASE("K coefficients: decay in m") {
    for (std::size_t d = 0; d <= 3; ++d) {
      Rational prev = 2;
      for (std::size_t m : {4, 8, 16, 32}) {
        Rational cur = k_coefficients(m, 0, d).max_defect;
        CHECK(cur <= prev);
        prev = cur;
      }
      CHECK(prev <= Rational(static_cast<long>(2 * d + 1), 17));
    }
  }
}
