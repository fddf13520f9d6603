#pragma once

// Linear subspaces of F^n held in canonical reduced row-echelon form, so that
// equality of subspaces is equality of their canonical bases.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gcred/matrix.hpp"

namespace gcred {

template <class F>
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const std::vector<Vec<F>>& vectors, std::size_t ambient_dim) {
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw std::invalid_argument("span: vector length differs from ambient dimension");
    }
    Subspace s;
    s.ambient_ = ambient_dim;
    if (vectors.empty()) return s;
    auto ech = row_reduce(Matrix<F>::from_rows(vectors, ambient_dim));
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      s.basis_.push_back(ech.reduced.row(r));
      s.pivots_.push_back(ech.pivots[r]);
    }
    return s;
  }

  static Subspace zero(std::size_t ambient_dim) { return span({}, ambient_dim); }

  static Subspace whole(std::size_t ambient_dim) {
    std::vector<Vec<F>> units;
    for (std::size_t k = 0; k < ambient_dim; ++k) units.push_back(unit_vec<F>(ambient_dim, k));
    return span(units, ambient_dim);
  }

  /// Column space of a matrix.
  static Subspace column_space(const Matrix<F>& m) { return span(m.columns(), m.rows()); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the canonical basis; zero iff v is in the span.
  Vec<F> residual(const Vec<F>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("residual: vector length mismatch");
    Vec<F> r(v);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      F factor = r[pivots_[k]];
      if (is_zero(factor)) continue;
      for (std::size_t c = 0; c < ambient_; ++c) r[c] -= factor * basis_[k][c];
    }
    return r;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(residual(v)); }

  bool contains(const Subspace& other) const {
    check_ambient(other);
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  /// Coordinates of v with respect to the canonical basis. Requires v in the subspace.
  Vec<F> coordinates(const Vec<F>& v) const {
    if (!contains(v)) throw std::invalid_argument("coordinates: vector not in subspace");
    Vec<F> c(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
  }

  /// Image under a linear map given as a matrix (rows = target dimension).
  Subspace image(const Matrix<F>& m) const {
    if (m.cols() != ambient_) throw std::invalid_argument("image: matrix width mismatch");
    std::vector<Vec<F>> out;
    for (const auto& v : basis_) out.push_back(m * v);
    return span(out, m.rows());
  }

  /// Basis as the columns of an ambient x dim matrix.
  Matrix<F> basis_matrix() const { return Matrix<F>::from_columns(basis_, ambient_); }

  Subspace conj() const {
    std::vector<Vec<F>> out;
    for (const auto& v : basis_) out.push_back(conj_vec(v));
    return span(out, ambient_);
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  void check_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw std::invalid_argument("subspaces live in different ambient dimensions");
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> pivots_;
};

template <class To, class From>
Subspace<To> convert_subspace(const Subspace<From>& s) {
  std::vector<Vec<To>> out;
  for (const auto& v : s.basis()) out.push_back(convert_vec<To>(v));
  return Subspace<To>::span(out, s.ambient_dim());
}

template <class F>
Subspace<F> join(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  std::vector<Vec<F>> all(a.basis());
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return Subspace<F>::span(all, a.ambient_dim());
}

/// {v : a . v = 0 for all a in A} under the coordinate dot product.
template <class F>
Subspace<F> annihilator(const Subspace<F>& a) {
  if (a.dim() == 0) return Subspace<F>::whole(a.ambient_dim());
  return Subspace<F>::span(kernel(Matrix<F>::from_rows(a.basis(), a.ambient_dim())), a.ambient_dim());
}

template <class F>
Subspace<F> meet(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  return annihilator(join(annihilator(a), annihilator(b)));
}

/// {v : form(a, v) = 0 for all a in A} for a symmetric bilinear form.
template <class F>
Subspace<F> perp_wrt(const Subspace<F>& a, const Matrix<F>& form) {
  if (form.rows() != a.ambient_dim() || form.cols() != a.ambient_dim()) {
    throw std::invalid_argument("perp_wrt: form dimension mismatch");
  }
  if (!form.is_symmetric()) throw std::invalid_argument("perp_wrt: bilinear form is not symmetric");
  if (a.dim() == 0) return Subspace<F>::whole(a.ambient_dim());
  Matrix<F> conditions = Matrix<F>::from_rows(a.basis(), a.ambient_dim()) * form;
  return Subspace<F>::span(kernel(conditions), a.ambient_dim());
}

/// Preimage {v : m v in target}.
template <class F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& target) {
  if (m.rows() != target.ambient_dim()) throw std::invalid_argument("preimage: dimension mismatch");
  Subspace<F> ann = annihilator(target);
  if (ann.dim() == 0) return Subspace<F>::whole(m.cols());
  Matrix<F> conditions = Matrix<F>::from_rows(ann.basis(), m.rows()) * m;
  return Subspace<F>::span(kernel(conditions), m.cols());
}

/// A/B presented by coset representatives and a coordinate projection.
template <class F>
struct Quotient {
  std::vector<Vec<F>> representatives;  // completes a basis of B to a basis of A
  Matrix<F> projection;                 // dim(A/B) x ambient, valid on A, kernel on A is exactly B

  std::size_t dim() const { return representatives.size(); }
  Vec<F> project(const Vec<F>& v) const { return projection * v; }
};

template <class F>
Quotient<F> quotient(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  if (!a.contains(b)) throw std::invalid_argument("quotient: B is not contained in A");
  Quotient<F> q;
  Subspace<F> acc = b;
  for (const auto& v : a.basis()) {
    if (acc.contains(v)) continue;
    q.representatives.push_back(v);
    acc = join(acc, Subspace<F>::span({v}, a.ambient_dim()));
  }
  std::vector<Vec<F>> cols(b.basis());
  cols.insert(cols.end(), q.representatives.begin(), q.representatives.end());
  q.projection = Matrix<F>(q.representatives.size(), a.ambient_dim());
  if (cols.empty()) return q;
  Matrix<F> left = left_inverse(Matrix<F>::from_columns(cols, a.ambient_dim()));
  for (std::size_t r = 0; r < q.representatives.size(); ++r)
    for (std::size_t c = 0; c < a.ambient_dim(); ++c) q.projection(r, c) = left(b.dim() + r, c);
  return q;
}

}  // namespace gcred
