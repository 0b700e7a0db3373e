#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropkit/rational.hpp"

namespace tropkit {

using QVector = std::vector<Rat>;
using IntVector = std::vector<Int>;

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rat& s, const QVector& a);
Rat dot(const QVector& a, const QVector& b);
Rat dot(const IntVector& a, const QVector& b);
QVector to_rational(const IntVector& v);
QVector zeros(std::size_t n);
QVector concat(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

/// Smallest positive multiple of v with coprime integer entries.
/// The zero vector maps to the zero vector.
IntVector primitive_integer(const QVector& v);

/// Dense row-major rational matrix; the shape is fixed at construction.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;
  QMatrix transpose() const;
  bool is_integral() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);
QMatrix block_diagonal(const QMatrix& a, const QMatrix& b);

struct RowEchelon {
  QMatrix reduced;                  // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(const QMatrix& a);
std::size_t rank(const QMatrix& a);
std::size_t rank(const std::vector<QVector>& rows, std::size_t cols);

/// Basis of {x : a x = 0}, one vector per free column of rref(a).
std::vector<QVector> nullspace(const QMatrix& a);

/// Some solution of a x = b, or nullopt if inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

std::optional<QMatrix> inverse(const QMatrix& a);
Rat determinant(QMatrix a);

/// Z-basis of {x in Z^n : rows * x = 0}, computed by unimodular column reduction.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n);

}  // namespace tropkit
