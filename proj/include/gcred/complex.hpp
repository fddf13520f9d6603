#pragma once

// Invariant complex structures I on m (matrices acting on column vectors), the induced
// bigrading of forms over Q(i), and d^c = i(delbar - del).
//
// I acts on 1-forms by (I* alpha)(X) = alpha(IX); (1,0)-forms satisfy I* alpha = i alpha.

#include <optional>
#include <string>

#include "gcred/form.hpp"
#include "gcred/lie_algebra.hpp"
#include "gcred/matrix.hpp"
#include "gcred/subspace.hpp"
#include "gcred/validation.hpp"

namespace gcred {

bool squares_to_minus_one(const Matrix<Rational>& i);

/// g(IX, IY) = g(X, Y).
bool is_orthogonal_for(const Matrix<Rational>& i, const Matrix<Rational>& g);

/// First basis pair with nonzero Nijenhuis tensor
/// N(X, Y) = [IX, IY] - I[IX, Y] - I[X, IY] - [X, Y], rendered as a witness.
std::optional<std::string> nijenhuis_witness(const LieAlgebra& algebra, const Matrix<Rational>& i);

/// Throws GcredError unless I^2 = -1 and I is integrable.
void require_complex_structure(const LieAlgebra& algebra, const Matrix<Rational>& i, const std::string& name);

/// omega(X, Y) = g(IX, Y).
Form<Rational> kahler_form(const Matrix<Rational>& g, const Matrix<Rational>& i);

/// The +i-eigenspace T^{1,0} of I in m (x) Q(i).
Subspace<Gaussian> holomorphic_vectors(const Matrix<Rational>& i);

/// Derivation extension of I* to forms; multiplies (p,q)-forms by i(p - q).
template <class F>
Form<F> type_operator(const Matrix<Rational>& i, const Form<F>& a) {
  const std::size_t n = a.dim();
  Form<F> out(n, a.degree());
  for (const auto& [mask, c] : a.terms()) {
    auto idx = mask_indices(mask);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      Form<F> term = Form<F>::constant(n, c);
      for (std::size_t q = 0; q < idx.size(); ++q) {
        if (q == p) {
          Vec<F> row(n);
          for (std::size_t l = 0; l < n; ++l) row[l] = F(i(idx[q], l));
          term = wedge(term, Form<F>::covector(row));
        } else {
          term = wedge(term, Form<F>::monomial(n, {idx[q]}));
        }
      }
      out += term;
    }
  }
  return out;
}

/// Component of type (p, q) of a form of degree p + q.
Form<Gaussian> bidegree_component(const Matrix<Rational>& i, const Form<Gaussian>& a, int p, int q);

/// d^c a = i(delbar - del) a via the bigrading; requires I integrable.
Form<Gaussian> dc_operator(const LieAlgebra& algebra, const Matrix<Rational>& i, const Form<Gaussian>& a);
Form<Rational> dc_operator(const LieAlgebra& algebra, const Matrix<Rational>& i, const Form<Rational>& a);

}  // namespace gcred
