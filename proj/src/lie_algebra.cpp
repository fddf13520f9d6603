#include "gcred/lie_algebra.hpp"

#include <map>
#include <stdexcept>

namespace gcred {

LieAlgebra::LieAlgebra(std::size_t dim, const std::vector<BracketRelation>& relations)
    : dim_(dim), constants_(dim * dim * dim, Rational(0)) {
  if (dim > kMaxFormDim) throw std::invalid_argument("Lie algebra dimension exceeds supported maximum");
  std::vector<bool> seen(dim * dim, false);
  for (const auto& rel : relations) {
    if (rel.i >= dim || rel.j >= dim) throw std::invalid_argument("bracket relation index out of range");
    if (rel.value.size() != dim) throw std::invalid_argument("bracket relation value has wrong length");
    if (rel.i == rel.j) {
      if (!is_zero_vec(rel.value)) throw std::invalid_argument("bracket [e_i, e_i] must vanish");
      continue;
    }
    std::size_t a = std::min(rel.i, rel.j);
    std::size_t b = std::max(rel.i, rel.j);
    Rational sign = rel.i < rel.j ? Rational(1) : Rational(-1);
    for (std::size_t k = 0; k < dim; ++k) {
      Rational v = sign * rel.value[k];
      Rational& slot = constants_[(k * dim + a) * dim + b];
      if (seen[a * dim + b] && slot != v) {
        throw std::invalid_argument("conflicting bracket relations for [e" + std::to_string(a + 1) + ", e" +
                                    std::to_string(b + 1) + "]");
      }
      slot = v;
      constants_[(k * dim + b) * dim + a] = -v;
    }
    seen[a * dim + b] = true;
  }
  d_dual_.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Form<Rational> df(dim, 2);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        const Rational& c = constant(k, i, j);
        if (!is_zero(c)) df.add_term((Mask{1} << i) | (Mask{1} << j), Rational(-c));
      }
    d_dual_.push_back(std::move(df));
  }
}

bool LieAlgebra::is_abelian() const {
  for (const auto& c : constants_)
    if (!is_zero(c)) return false;
  return true;
}

std::vector<BracketRelation> LieAlgebra::relations() const {
  std::vector<BracketRelation> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      Vec<Rational> v(dim_);
      for (std::size_t k = 0; k < dim_; ++k) v[k] = constant(k, i, j);
      if (!is_zero_vec(v)) out.push_back({i, j, std::move(v)});
    }
  return out;
}

Matrix<Rational> LieAlgebra::ad(const Vec<Rational>& x) const {
  Matrix<Rational> m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    auto col = bracket(x, unit_vec<Rational>(dim_, j));
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
  }
  return m;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  std::vector<JacobiViolation> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ei = unit_vec<Rational>(n, i);
        auto ej = unit_vec<Rational>(n, j);
        auto ek = unit_vec<Rational>(n, k);
        auto jac = add(add(algebra.bracket(ei, algebra.bracket(ej, ek)), algebra.bracket(ej, algebra.bracket(ek, ei))),
                       algebra.bracket(ek, algebra.bracket(ei, ej)));
        if (!is_zero_vec(jac)) out.push_back({i, j, k, std::move(jac)});
      }
  return out;
}

LieAlgebra subalgebra(const LieAlgebra& algebra, const Matrix<Rational>& basis) {
  if (basis.rows() != algebra.dim()) throw std::invalid_argument("subalgebra: basis has wrong height");
  const std::size_t m = basis.cols();
  if (m == 0) return LieAlgebra(0, {});
  Matrix<Rational> left = left_inverse(basis);
  std::vector<BracketRelation> rel;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto br = algebra.bracket(basis.column(i), basis.column(j));
      auto coords = left * br;
      if (basis * coords != br) throw std::invalid_argument("subalgebra: span is not bracket-closed");
      if (!is_zero_vec(coords)) rel.push_back({i, j, std::move(coords)});
    }
  return LieAlgebra(m, rel);
}

Vec<Rational> form_coordinates(const Form<Rational>& a) {
  auto masks = masks_of_degree(a.dim(), a.degree());
  Vec<Rational> out(masks.size(), Rational(0));
  std::map<Mask, std::size_t> index;
  for (std::size_t r = 0; r < masks.size(); ++r) index[masks[r]] = r;
  for (const auto& [m, c] : a.terms()) out[index.at(m)] = c;
  return out;
}

Form<Rational> form_from_coordinates(std::size_t dim, int degree, const Vec<Rational>& coords) {
  auto masks = masks_of_degree(dim, degree);
  if (coords.size() != masks.size()) throw std::invalid_argument("form_from_coordinates: wrong length");
  Form<Rational> out(dim, degree);
  for (std::size_t r = 0; r < masks.size(); ++r) out.add_term(masks[r], coords[r]);
  return out;
}

Matrix<Rational> differential_matrix(const LieAlgebra& algebra, int degree) {
  const std::size_t n = algebra.dim();
  auto cols = masks_of_degree(n, degree);
  auto rows = masks_of_degree(n, degree + 1);
  Matrix<Rational> out(rows.size(), cols.size());
  if (rows.empty()) return out;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Form<Rational> basis(n, degree);
    basis.add_term(cols[c], Rational(1));
    auto coords = form_coordinates(algebra.d(basis));
    for (std::size_t r = 0; r < rows.size(); ++r) out(r, c) = coords[r];
  }
  return out;
}

std::vector<Form<Rational>> closed_forms(const LieAlgebra& algebra, int degree) {
  std::vector<Form<Rational>> out;
  if (degree < 0 || degree > static_cast<int>(algebra.dim())) return out;
  for (const auto& v : kernel(differential_matrix(algebra, degree)))
    out.push_back(form_from_coordinates(algebra.dim(), degree, v));
  return out;
}

std::optional<Form<Rational>> primitive(const LieAlgebra& algebra, const Form<Rational>& target) {
  if (target.dim() != algebra.dim()) throw std::invalid_argument("primitive: dimension mismatch");
  if (target.degree() <= 0) {
    if (target.is_zero_form()) return Form<Rational>(algebra.dim(), target.degree() - 1);
    return std::nullopt;
  }
  auto sol = solve(differential_matrix(algebra, target.degree() - 1), form_coordinates(target));
  if (!sol) return std::nullopt;
  return form_from_coordinates(algebra.dim(), target.degree() - 1, *sol);
}

}  // namespace gcred
