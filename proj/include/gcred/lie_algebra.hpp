#pragma once

// Finite-dimensional Lie algebras by structure constants, and the invariant Cartan
// calculus on their exterior algebra.
//
// Sign convention: for a 1-form, d alpha(X, Y) = -alpha([X, Y]); hence
// d f_k = -sum_{i<j} c^k_{ij} f_i ^ f_j, extended to all degrees as an antiderivation.

#include <cstddef>
#include <string>
#include <vector>

#include "gcred/form.hpp"
#include "gcred/matrix.hpp"

namespace gcred {

/// [e_i, e_j] = value (0-based indices); the relation [e_j, e_i] = -value is implied.
struct BracketRelation {
  std::size_t i = 0;
  std::size_t j = 0;
  Vec<Rational> value;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::size_t dim, const std::vector<BracketRelation>& relations);

  static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(dim, {}); }

  std::size_t dim() const { return dim_; }

  /// c^k_{ij}.
  const Rational& constant(std::size_t k, std::size_t i, std::size_t j) const {
    return constants_[(k * dim_ + i) * dim_ + j];
  }

  bool is_abelian() const;

  /// Relations [e_i, e_j] for i < j with nonzero value, in lexicographic order.
  std::vector<BracketRelation> relations() const;

  template <class F>
  Vec<F> bracket(const Vec<F>& x, const Vec<F>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket: dimension mismatch");
    Vec<F> out(dim_, F(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (i == j || is_zero(y[j])) continue;
        F xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) {
          const Rational& c = constant(k, i, j);
          if (!is_zero(c)) out[k] += F(c) * xy;
        }
      }
    }
    return out;
  }

  /// ad_x as a matrix: column j = [x, e_j].
  Matrix<Rational> ad(const Vec<Rational>& x) const;

  /// d f_k.
  const Form<Rational>& d_dual(std::size_t k) const { return d_dual_.at(k); }

  /// Chevalley-Eilenberg differential. A top-degree input yields the (flagged) zero
  /// form of degree dim + 1.
  template <class F>
  Form<F> d(const Form<F>& a) const {
    if (a.dim() != dim_) throw std::invalid_argument("d: form dimension mismatch");
    Form<F> out(dim_, a.degree() + 1);
    if (a.degree() < 0 || a.degree() >= static_cast<int>(dim_)) return out;
    for (const auto& [mask, c] : a.terms()) {
      auto idx = mask_indices(mask);
      for (std::size_t p = 0; p < idx.size(); ++p) {
        const Form<Rational>& df = d_dual_[idx[p]];
        if (df.is_zero_form()) continue;
        Form<F> term = Form<F>::constant(dim_, p % 2 == 0 ? c : F(-c));
        for (std::size_t q = 0; q < idx.size(); ++q) {
          if (q == p) {
            term = wedge(term, convert_form<F>(df));
          } else {
            term = wedge(term, Form<F>::monomial(dim_, {idx[q]}));
          }
        }
        out += term;
      }
    }
    return out;
  }

  /// Lie derivative by Cartan's formula L_X = d i_X + i_X d.
  template <class F>
  Form<F> lie_derivative(const Vec<F>& x, const Form<F>& a) const {
    if (a.degree() == 0) return Form<F>(dim_, 0);
    Form<F> out = d(interior(x, a));
    if (a.degree() < static_cast<int>(dim_)) out += interior(x, d(a));
    return out;
  }

  bool operator==(const LieAlgebra& o) const { return dim_ == o.dim_ && constants_ == o.constants_; }
  bool operator!=(const LieAlgebra& o) const { return !(*this == o); }

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> constants_;
  std::vector<Form<Rational>> d_dual_;
};

struct JacobiViolation {
  std::size_t i = 0;  // 0-based, i < j < k
  std::size_t j = 0;
  std::size_t k = 0;
  Vec<Rational> jacobiator;  // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
};

/// Every basis triple violating the Jacobi identity; empty iff the algebra is a Lie algebra.
std::vector<JacobiViolation> check_jacobi(const LieAlgebra& algebra);

/// Subalgebra with the given basis vectors (columns of `basis`, independent); the
/// structure constants are re-expressed in that basis. Throws if not closed.
LieAlgebra subalgebra(const LieAlgebra& algebra, const Matrix<Rational>& basis);

/// Matrix of d : Lambda^k -> Lambda^{k+1} in the bases masks_of_degree(n, k) / (n, k+1).
Matrix<Rational> differential_matrix(const LieAlgebra& algebra, int degree);

/// Basis of the closed invariant k-forms.
std::vector<Form<Rational>> closed_forms(const LieAlgebra& algebra, int degree);

/// Some a with d a = target, or nullopt when target is not exact.
std::optional<Form<Rational>> primitive(const LieAlgebra& algebra, const Form<Rational>& target);

/// Coefficients of a k-form in the basis masks_of_degree(n, k).
Vec<Rational> form_coordinates(const Form<Rational>& a);
Form<Rational> form_from_coordinates(std::size_t dim, int degree, const Vec<Rational>& coords);

}  // namespace gcred
