#include "graphck/sparse_matrix.hpp"

#include <algorithm>

#include "graphck/errors.hpp"

namespace graphck {

namespace {

// Sorts by row, merges duplicates and drops zeros.
void normalize(SparseMatrix::Column& c) {
  std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < c.size();) {
    std::uint32_t row = c[k].first;
    Rational sum = c[k].second;
    std::size_t k2 = k + 1;
    for (; k2 < c.size() && c[k2].first == row; ++k2) sum += c[k2].second;
    if (sum != 0) c[out++] = {row, sum};
    k = k2;
  }
  c.resize(out);
}

void check_same_dim(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.dim() != b.dim()) throw ContractViolation("sparse matrices of different dimension");
}

}  // namespace

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m.cols_[j].push_back({static_cast<std::uint32_t>(j), 1});
  return m;
}

Rational SparseMatrix::at(std::size_t i, std::size_t j) const {
  const Column& c = cols_.at(j);
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  return it != c.end() && it->first == i ? it->second : Rational(0);
}

void SparseMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
  if (i >= dim() || j >= dim()) throw ContractViolation("sparse matrix index out of range");
  if (v == 0) return;
  Column& c = cols_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, std::size_t row) { return e.first < row; });
  if (it != c.end() && it->first == i) {
    it->second += v;
    if (it->second == 0) c.erase(it);
  } else {
    c.insert(it, {static_cast<std::uint32_t>(i), v});
  }
}

void SparseMatrix::set_column(std::size_t j, Column c) {
  normalize(c);
  cols_.at(j) = std::move(c);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto& [i, v] : cols_[j]) t.cols_[i].push_back({static_cast<std::uint32_t>(j), v});
  return t;  // rows visited in increasing j, so columns are already sorted
}

SparseMatrix SparseMatrix::schur(const std::function<Rational(std::size_t, std::size_t)>& w) const {
  SparseMatrix out(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    for (const auto& [i, v] : cols_[j]) {
      Rational x = v * w(i, j);
      if (x != 0) out.cols_[j].push_back({i, x});
    }
  }
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  check_same_dim(a, b);
  SparseMatrix out(a.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    SparseMatrix::Column acc;
    for (const auto& [k, bkj] : b.cols_[j])
      for (const auto& [i, aik] : a.cols_[k]) acc.push_back({i, aik * bkj});
    normalize(acc);
    out.cols_[j] = std::move(acc);
  }
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  check_same_dim(a, b);
  SparseMatrix out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    SparseMatrix::Column c = a.cols_[j];
    c.insert(c.end(), b.cols_[j].begin(), b.cols_[j].end());
    normalize(c);
    out.cols_[j] = std::move(c);
  }
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  return a + Rational(-1) * b;
}

SparseMatrix operator*(const Rational& c, const SparseMatrix& a) {
  SparseMatrix out(a.dim());
  if (c == 0) return out;
  out.cols_ = a.cols_;
  for (auto& col : out.cols_)
    for (auto& e : col) e.second *= c;
  return out;
}

bool columns_agree(const SparseMatrix& a, const SparseMatrix& b,
                   const std::function<bool(std::size_t)>& keep) {
  check_same_dim(a, b);
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (keep(j) && a.column(j) != b.column(j)) return false;
  return true;
}

}  // namespace graphck
