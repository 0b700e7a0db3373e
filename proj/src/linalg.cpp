#include "tropkit/linalg.hpp"

#include <cassert>
#include <utility>

#include "tropkit/error.hpp"

namespace tropkit {

QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector sum");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector difference");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector operator*(const Rat& s, const QVector& a) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Rat dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot product");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot product");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += Rat(a[i]) * b[i];
  }
  return s;
}

QVector to_rational(const IntVector& v) {
  QVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

QVector zeros(std::size_t n) { return QVector(n, Rat(0)); }

QVector concat(const QVector& a, const QVector& b) {
  QVector out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

IntVector primitive_integer(const QVector& v) {
  Int l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, den(x));
  IntVector out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = num(v[i]) * (l / den(v[i]));
    g = boost::multiprecision::gcd(g, abs(out[i]));
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(Errc::DimensionMismatch, "matrix row length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector QMatrix::col(std::size_t j) const {
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_integral() const {
  for (const auto& x : data_) {
    if (!is_integer(x)) return false;
  }
  return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector product");
  QVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) s += a(i, j) * x[j];
    }
    out[i] = s;
  }
  return out;
}

QMatrix block_diagonal(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

RowEchelon rref(const QMatrix& input) {
  QMatrix a = input;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    }
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  QMatrix reduced(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const QMatrix& a) { return rref(a).pivots.size(); }

std::size_t rank(const std::vector<QVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return rank(QMatrix::from_rows(rows, cols));
}

std::vector<QVector> nullspace(const QMatrix& a) {
  auto [red, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v = zeros(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "solve right-hand side");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [red, pivots] = rref(aug);
  QVector x = zeros(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return std::nullopt;
    x[pivots[i]] = red(i, a.cols());
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto [red, pivots] = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

Rat determinant(QMatrix a) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<IntVector> integer_kernel(const std::vector<IntVector>& rows, std::size_t n) {
  // Column-style Hermite reduction: apply unimodular column operations to the
  // row matrix while tracking them in u. Columns of u that end up opposite a
  // zero column span the integer kernel.
  std::size_t m = rows.size();
  std::vector<IntVector> a(m, IntVector(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) throw Error(Errc::DimensionMismatch, "integer kernel row length");
    a[i] = rows[i];
  }
  std::vector<IntVector> u(n, IntVector(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_op = [&](std::size_t dst, std::size_t src, const Int& f) {
    // column dst -= f * column src
    for (std::size_t i = 0; i < m; ++i) a[i][dst] -= f * a[i][src];
    for (std::size_t i = 0; i < n; ++i) u[i][dst] -= f * u[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < n; ++i) std::swap(u[i][x], u[i][y]);
  };

  std::size_t lead = 0;
  for (std::size_t i = 0; i < m && lead < n; ++i) {
    // Euclid on row i over columns lead..n-1 until a single nonzero remains.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = lead; j < n; ++j) {
        if (a[i][j] != 0 && (best == n || abs(a[i][j]) < abs(a[i][best]))) best = j;
      }
      if (best == n) break;
      bool reduced = false;
      for (std::size_t j = lead; j < n; ++j) {
        if (j == best || a[i][j] == 0) continue;
        Int q = a[i][j] / a[i][best];
        col_op(j, best, q);
        reduced = true;
      }
      if (!reduced) {
        col_swap(lead, best);
        ++lead;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t j = lead; j < n; ++j) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace tropkit
