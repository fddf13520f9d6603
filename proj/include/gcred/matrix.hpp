#pragma once

// Dense matrices over an exact field with Gauss-Jordan elimination.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcred/scalar.hpp"

namespace gcred {

template <class F>
using Vec = std::vector<F>;

template <class F>
Vec<F> zero_vec(std::size_t n) {
  return Vec<F>(n, F(0));
}

template <class F>
Vec<F> unit_vec(std::size_t n, std::size_t k) {
  Vec<F> v(n, F(0));
  v.at(k) = F(1);
  return v;
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  for (const auto& x : v) {
    if (!is_zero(x)) return false;
  }
  return true;
}

template <class F>
Vec<F> add(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vec<F> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class F>
Vec<F> sub(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Vec<F> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class F>
Vec<F> scale(const F& s, const Vec<F>& a) {
  Vec<F> out(a);
  for (auto& x : out) x *= s;
  return out;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  F s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class F>
Vec<F> conj_vec(const Vec<F>& a) {
  Vec<F> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(conj(x));
  return out;
}

template <class To, class From>
Vec<To> convert_vec(const Vec<From>& a) {
  Vec<To> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(To(x));
  return out;
}

/// Real part of a Q(i) vector; throws if any entry has nonzero imaginary part.
inline Vec<Rational> real_vec(const Vec<Gaussian>& a) {
  Vec<Rational> out;
  out.reserve(a.size());
  for (const auto& x : a) {
    if (!is_real(x)) throw std::domain_error("vector is not real");
    out.push_back(x.re());
  }
  return out;
}

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  static Matrix from_columns(const std::vector<Vec<F>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> column(std::size_t c) const {
    Vec<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vec<F> row(std::size_t r) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  std::vector<Vec<F>> columns() const {
    std::vector<Vec<F>> out;
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const F& a = (*this)(r, k);
        if (is_zero(a)) continue;
        for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) += a * o(k, c);
      }
    }
    return out;
  }

  Vec<F> operator*(const Vec<F>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec<F> out(rows_, F(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Matrix operator-() const {
    Matrix out(*this);
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend Matrix operator*(const F& s, Matrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  bool is_antisymmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        if ((*this)(r, c) != -(*this)(c, r)) return false;
    return true;
  }

  /// Submatrix of the listed rows and columns.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
    return out;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
  return out;
}

inline Matrix<Rational> real_matrix(const Matrix<Gaussian>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!is_real(m(r, c))) throw std::domain_error("matrix is not real");
      out(r, c) = m(r, c).re();
    }
  return out;
}

template <class F>
struct RowEchelon {
  Matrix<F> reduced;                // reduced row-echelon form, same shape as the input
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row-echelon form.
template <class F>
RowEchelon<F> row_reduce(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pr = lead_row;
    while (pr < m.rows() && is_zero(m(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pr, k), m(lead_row, k));
    }
    F inv = F(1) / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || is_zero(m(r, c))) continue;
      F factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).pivots.size();
}

/// Basis of {x : m x = 0}, one vector per free column, in increasing order of the free column.
template <class F>
std::vector<Vec<F>> kernel(const Matrix<F>& m) {
  auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = rhs, or nullopt when the system is inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  auto ech = row_reduce(aug);
  Vec<F> x(m.cols(), F(0));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == m.cols()) return std::nullopt;
    x[ech.pivots[r]] = ech.reduced(r, m.cols());
  }
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = F(1);
  }
  auto ech = row_reduce(aug);
  if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
  return inv;
}

template <class F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && is_zero(m(pr, c))) ++pr;
    if (pr == n) return F(0);
    if (pr != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(pr, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    F inv = F(1) / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      F factor = m(r, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(r, k) -= factor * m(c, k);
    }
  }
  return det;
}

/// Left inverse L (cols x rows) of a matrix with independent columns, so that L * m = Id.
/// L is supported on an invertible square selection of rows of m.
template <class F>
Matrix<F> left_inverse(const Matrix<F>& m) {
  auto ech = row_reduce(m.transpose());
  if (ech.pivots.size() != m.cols()) throw std::invalid_argument("left_inverse: dependent columns");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  Matrix<F> square = m.select(ech.pivots, cols);
  auto inv = inverse(square);
  if (!inv) throw std::logic_error("left_inverse: selected rows are singular");
  Matrix<F> out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t k = 0; k < ech.pivots.size(); ++k) out(r, ech.pivots[k]) = (*inv)(r, k);
  return out;
}

template <class F>
std::string to_string(const Vec<F>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

template <class F>
std::string to_string(const Matrix<F>& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += to_string(m(r, c));
    }
  }
  return out + "]";
}

}  // namespace gcred
