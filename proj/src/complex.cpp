#include "gcred/complex.hpp"

namespace gcred {

bool squares_to_minus_one(const Matrix<Rational>& i) {
  return i.rows() == i.cols() && i * i == -Matrix<Rational>::identity(i.rows());
}

bool is_orthogonal_for(const Matrix<Rational>& i, const Matrix<Rational>& g) { return i.transpose() * g * i == g; }

std::optional<std::string> nijenhuis_witness(const LieAlgebra& algebra, const Matrix<Rational>& i) {
  const std::size_t n = algebra.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      auto x = unit_vec<Rational>(n, a);
      auto y = unit_vec<Rational>(n, b);
      auto ix = i * x;
      auto iy = i * y;
      auto nij = sub(sub(algebra.bracket(ix, iy), i * algebra.bracket(ix, y)),
                     add(i * algebra.bracket(x, iy), algebra.bracket(x, y)));
      if (!is_zero_vec(nij)) {
        return "N(e" + std::to_string(a + 1) + ", e" + std::to_string(b + 1) + ") = " + to_string(nij);
      }
    }
  return std::nullopt;
}

void require_complex_structure(const LieAlgebra& algebra, const Matrix<Rational>& i, const std::string& name) {
  if (i.rows() != algebra.dim() || i.cols() != algebra.dim()) throw GcredError(name + " has the wrong size");
  if (!squares_to_minus_one(i)) throw GcredError(name + " does not square to -1");
  if (auto w = nijenhuis_witness(algebra, i)) throw GcredError(name + " is not integrable: " + *w);
}

Form<Rational> kahler_form(const Matrix<Rational>& g, const Matrix<Rational>& i) {
  Matrix<Rational> w = i.transpose() * g;
  if (!w.is_antisymmetric()) throw GcredError("g(I., .) is not antisymmetric; I is not g-orthogonal");
  return Form<Rational>::from_matrix(w);
}

Subspace<Gaussian> holomorphic_vectors(const Matrix<Rational>& i) {
  const std::size_t n = i.rows();
  Matrix<Gaussian> shifted = convert_matrix<Gaussian>(i);
  for (std::size_t k = 0; k < n; ++k) shifted(k, k) -= Gaussian::i();
  return Subspace<Gaussian>::span(kernel(shifted), n);
}

Form<Gaussian> bidegree_component(const Matrix<Rational>& i, const Form<Gaussian>& a, int p, int q) {
  const int k = a.degree();
  if (p + q != k || p < 0 || q < 0) throw std::invalid_argument("bidegree does not match form degree");
  // Lagrange projector onto the eigenvalue i(p - q) of the type operator.
  const Gaussian target = Gaussian(Rational(p - q)) * Gaussian::i();
  Form<Gaussian> cur = a;
  Gaussian denom(1);
  for (int pp = 0; pp <= k; ++pp) {
    if (pp == p) continue;
    Gaussian lambda = Gaussian(Rational(2 * pp - k)) * Gaussian::i();
    cur = type_operator(i, cur) - lambda * cur;
    denom *= target - lambda;
  }
  return (Gaussian(1) / denom) * cur;
}

Form<Gaussian> dc_operator(const LieAlgebra& algebra, const Matrix<Rational>& i, const Form<Gaussian>& a) {
  require_complex_structure(algebra, i, "complex structure");
  const int k = a.degree();
  const std::size_t n = algebra.dim();
  Form<Gaussian> out(n, k + 1);
  if (k < 0 || k >= static_cast<int>(n)) return out;
  Form<Gaussian> rebuilt(n, k);
  for (int p = 0; p <= k; ++p) {
    Form<Gaussian> piece = bidegree_component(i, a, p, k - p);
    rebuilt += piece;
    Form<Gaussian> dpiece = algebra.d(piece);
    Form<Gaussian> del = bidegree_component(i, dpiece, p + 1, k - p);
    Form<Gaussian> delbar = bidegree_component(i, dpiece, p, k - p + 1);
    if (del + delbar != dpiece) throw InternalError("d does not split into del + delbar");
    out += Gaussian::i() * (delbar - del);
  }
  if (rebuilt != a) throw InternalError("bidegree components do not sum to the form");
  return out;
}

Form<Rational> dc_operator(const LieAlgebra& algebra, const Matrix<Rational>& i, const Form<Rational>& a) {
  return real_form(dc_operator(algebra, i, convert_form<Gaussian>(a)));
}

}  // namespace gcred
