#include "graphck/kappa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>

#include "graphck/errors.hpp"

namespace graphck {

Rational kappa_entry(std::size_t m, long i, long j) {
  const long mm = static_cast<long>(m);
  if (i < 1 || j < 1 || i > mm || j > mm) return 0;
  long fi = std::min(i, mm + 1 - i);
  long fj = std::min(j, mm + 1 - j);
  Rational out(std::min(fi, fj), static_cast<long>(half_ceil(m)) + 1);
  out.canonicalize();
  return out;
}

Rational KappaMatrix::operator()(long i, long j) const { return kappa_entry(m, i, j); }

KappaMatrix kappa_matrix(std::size_t m) {
  if (m == 0) throw ContractViolation("kappa_matrix: m must be positive");
  KappaMatrix k{m, RationalMatrix(m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      k.entries(i, j) = kappa_entry(m, static_cast<long>(i + 1), static_cast<long>(j + 1));
  return k;
}

std::string KappaMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out << (j ? " " : "") << entries(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

RationalMatrix schur_kappa(std::size_t m, const RationalMatrix& a) {
  if (a.n != m) throw ContractViolation("schur_kappa: matrix size differs from m");
  RationalMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out(i, j) = a(i, j) * kappa_entry(m, static_cast<long>(i + 1), static_cast<long>(j + 1));
  return out;
}

RationalMatrix schur_decomposition_sum(std::size_t m, const RationalMatrix& a) {
  if (a.n != m) throw ContractViolation("schur_decomposition_sum: matrix size differs from m");
  const std::size_t L = half_ceil(m);
  const Rational w(1, static_cast<long>(L) + 1);
  RationalMatrix out(m);
  for (std::size_t l = 1; l <= L; ++l) {
    // P_{m,l} A P_{m,l} keeps the block on coordinates l..m-l+1 (1-based).
    for (std::size_t i = l - 1; i <= m - l; ++i)
      for (std::size_t j = l - 1; j <= m - l; ++j) out(i, j) += a(i, j);
  }
  for (Rational& x : out.data) x *= w;
  return out;
}

Rational schur_norm_bound(std::size_t m) {
  return Rational(static_cast<long>(half_ceil(m)), static_cast<long>(half_ceil(m)) + 1);
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<double>& a, std::size_t n) {
  if (a.size() != n * n) throw ContractViolation("dense matrix has the wrong size");
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  return m;
}

}  // namespace

double spectral_norm(const std::vector<double>& a, std::size_t n) {
  if (n == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a, n));
  return svd.singularValues()(0);
}

double min_symmetric_eigenvalue(const std::vector<double>& a, std::size_t n) {
  if (n == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a, n), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> schur_kappa(std::size_t m, const std::vector<double>& a) {
  if (a.size() != m * m) throw ContractViolation("schur_kappa: matrix size differs from m");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out[i * m + j] =
          a[i * m + j] * kappa_entry(m, static_cast<long>(i + 1), static_cast<long>(j + 1)).get_d();
  return out;
}

KCoefficients k_coefficients(std::size_t m, std::size_t a, std::size_t b) {
  if (m == 0) throw ContractViolation("k_coefficients: m must be positive");
  const std::size_t d = a > b ? a - b : b - a;
  if (d >= m) throw ContractViolation("k_coefficients: ||mu| - |nu|| must be below m");
  KCoefficients k{m, a, b, d, {}, 0};
  const long mm = static_cast<long>(m);
  const long l = static_cast<long>(half_ceil(m));
  const long shift = static_cast<long>(b) - static_cast<long>(a);
  auto mod = [mm](long x) { return ((x % mm) + mm) % mm; };
  bool first = true;
  for (long i = 0; i < mm; ++i) {
    long x1 = mod(static_cast<long>(a) + i);
    long x2 = mod(static_cast<long>(a) + i - l);
    Rational v = kappa0(m, x1, x1 + shift) + kappa0(m, x2, x2 + shift);
    Rational defect = 1 - v;
    if (first || defect > k.max_defect) k.max_defect = defect;
    first = false;
    k.values.push_back(v);
  }
  return k;
}

}  // namespace graphck
