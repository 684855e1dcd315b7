#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "graphck/matrix.hpp"

namespace graphck {

// Square sparse matrix of rationals, stored by column: column j holds the
// nonzero (row, value) pairs of A e_j sorted by row.
class SparseMatrix {
 public:
  using Entry = std::pair<std::uint32_t, Rational>;
  using Column = std::vector<Entry>;

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : cols_(n) {}
  static SparseMatrix identity(std::size_t n);

  std::size_t dim() const { return cols_.size(); }
  const Column& column(std::size_t j) const { return cols_[j]; }
  Rational at(std::size_t i, std::size_t j) const;
  // Adds to an entry; keeps columns sorted and free of zeros.
  void add(std::size_t i, std::size_t j, const Rational& v);
  void set_column(std::size_t j, Column c);
  std::size_t nonzeros() const;
  bool is_zero() const;

  SparseMatrix transpose() const;
  // Entrywise product with the matrix w(i, j).
  SparseMatrix schur(const std::function<Rational(std::size_t, std::size_t)>& w) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const Rational& c, const SparseMatrix& a);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  std::vector<Column> cols_;
};

// Columns j with keep(j) agree, entry for entry.
bool columns_agree(const SparseMatrix& a, const SparseMatrix& b,
                   const std::function<bool(std::size_t)>& keep);

}  // namespace graphck
