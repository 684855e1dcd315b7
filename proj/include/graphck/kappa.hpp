#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphck/matrix.hpp"

namespace graphck {

// Dense n x n rational matrix, row-major.
struct RationalMatrix {
  std::size_t n = 0;
  std::vector<Rational> data;

  explicit RationalMatrix(std::size_t size = 0) : n(size), data(size * size) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

// The m x m compression matrix: entry (i, j) (1-based) is
// min(i', j') / (ceil(m/2) + 1) with i' = min(i, m + 1 - i).
struct KappaMatrix {
  std::size_t m = 0;
  RationalMatrix entries;
  // 1-based; zero outside {1..m}^2.
  Rational operator()(long i, long j) const;
  std::string to_string() const;
};

KappaMatrix kappa_matrix(std::size_t m);

inline std::size_t half_ceil(std::size_t m) { return (m + 1) / 2; }

// 1-based entry without building the matrix; zero outside the square.
Rational kappa_entry(std::size_t m, long i, long j);
// 0-based argument convention used by the P_m and Q_m sums: kappa0(a, b) is
// entry (a + 1, b + 1).
inline Rational kappa0(std::size_t m, long a, long b) { return kappa_entry(m, a + 1, b + 1); }

// kappa_m * A (entrywise).
RationalMatrix schur_kappa(std::size_t m, const RationalMatrix& a);
// sum_{l=1}^{ceil(m/2)} 1/(ceil(m/2)+1) P_{m,l} A P_{m,l}, P_{m,l} the
// projection onto coordinates l..m-l+1.
RationalMatrix schur_decomposition_sum(std::size_t m, const RationalMatrix& a);

// ceil(m/2) / (ceil(m/2) + 1).
Rational schur_norm_bound(std::size_t m);

// Floating-point helpers (row-major n x n input).
double spectral_norm(const std::vector<double>& a, std::size_t n);
double min_symmetric_eigenvalue(const std::vector<double>& a, std::size_t n);
std::vector<double> schur_kappa(std::size_t m, const std::vector<double>& a);

// K_{m,i} for i = 0..m-1, built from path lengths a = |mu| and b = |nu|:
//   K_{m,i} = kappa0(x1, x1 + b - a) + kappa0(x2, x2 + b - a),
// x1 = (a + i) mod m, x2 = (a + i - ceil(m/2)) mod m. The two terms come from
// the windows [m, 2m) and [m + ceil(m/2), 2m + ceil(m/2)) of the P_m and Q_m
// sums.
struct KCoefficients {
  std::size_t m = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t d = 0;
  std::vector<Rational> values;
  Rational max_defect;  // max_i (1 - K_{m,i})
};

KCoefficients k_coefficients(std::size_t m, std::size_t a, std::size_t b);

}  // namespace graphck
