#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "gcred/form.hpp"
#include "gcred/matrix.hpp"
#include "gcred/subspace.hpp"

namespace gcred::testing {

inline Rational random_rational(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  return make_rational(num(rng), den(rng));
}

inline Vec<Rational> random_vec(std::mt19937& rng, std::size_t n, int range = 3) {
  Vec<Rational> v(n);
  for (auto& x : v) x = random_rational(rng, range);
  return v;
}

/// Vectors with many zero entries, so that random spans have nontrivial intersections.
inline Vec<Rational> sparse_vec(std::mt19937& rng, std::size_t n) {
  Vec<Rational> v(n, Rational(0));
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int k = 0; k < 3; ++k) v[pos(rng)] = val(rng);
  return v;
}

inline Subspace<Rational> random_subspace(std::mt19937& rng, std::size_t n, std::size_t generators) {
  std::vector<Vec<Rational>> vs;
  for (std::size_t k = 0; k < generators; ++k) vs.push_back(sparse_vec(rng, n));
  return Subspace<Rational>::span(vs, n);
}

inline Form<Rational> random_form(std::mt19937& rng, std::size_t n, int degree, int range = 2) {
  Form<Rational> out(n, degree);
  for (auto m : masks_of_degree(n, degree)) out.add_term(m, random_rational(rng, range));
  return out;
}

inline Gaussian random_gaussian(std::mt19937& rng) { return {random_rational(rng), random_rational(rng)}; }

}  // namespace gcred::testing

#include "gcred/lie_algebra.hpp"

namespace gcred::testing {

/// [e_i, e_j] = sum coeff * e_k with 1-based indices.
struct Rel {
  std::size_t i;
  std::size_t j;
  std::vector<std::pair<std::size_t, long>> value;
};

inline LieAlgebra algebra(std::size_t n, const std::vector<Rel>& rels) {
  std::vector<BracketRelation> out;
  for (const auto& r : rels) {
    Vec<Rational> v(n, Rational(0));
    for (const auto& [k, c] : r.value) v[k - 1] += c;
    out.push_back({r.i - 1, r.j - 1, v});
  }
  return LieAlgebra(n, out);
}

inline LieAlgebra heisenberg3() { return algebra(3, {{1, 2, {{3, 1}}}}); }

/// h3 + R: [e1, e2] = e3, e4 central.
inline LieAlgebra heisenberg3_r() { return algebra(4, {{1, 2, {{3, 1}}}}); }

inline LieAlgebra su2() { return algebra(3, {{1, 2, {{3, 1}}}, {2, 3, {{1, 1}}}, {3, 1, {{2, 1}}}}); }

/// Filiform: [e1, e_i] = e_{i+1}.
inline LieAlgebra filiform6() {
  return algebra(6, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}, {1, 4, {{5, 1}}}, {1, 5, {{6, 1}}}});
}

/// Solvable: [e1, e2] = e2, [e1, e3] = 2 e3.
inline LieAlgebra solvable3() { return algebra(3, {{1, 2, {{2, 1}}}, {1, 3, {{3, 2}}}}); }

/// h3 + h3.
inline LieAlgebra heisenberg_pair() { return algebra(6, {{1, 2, {{3, 1}}}, {4, 5, {{6, 1}}}}); }

inline std::vector<LieAlgebra> lie_algebras() {
  return {LieAlgebra::abelian(4), heisenberg3(), heisenberg3_r(), su2(), filiform6(), solvable3(), heisenberg_pair()};
}

/// Antisymmetric but not Lie: [e1, e2] = e3, [e1, e3] = e1.
inline LieAlgebra jacobi_violator() { return algebra(3, {{1, 2, {{3, 1}}}, {1, 3, {{1, 1}}}}); }

inline Form<Rational> f(std::size_t n, std::vector<std::size_t> one_based, long coeff = 1) {
  for (auto& k : one_based) k -= 1;
  return Form<Rational>::monomial(n, one_based, Rational(coeff));
}

inline Vec<Rational> e(std::size_t n, std::size_t one_based) { return unit_vec<Rational>(n, one_based - 1); }

}  // namespace gcred::testing

#include "gcred/courant.hpp"

namespace gcred::testing {

inline Section<Rational> sec(const Vec<Rational>& x, const Vec<Rational>& xi) { return {x, xi}; }

/// Closed-twist models in dimensions 2 to 8.
inline std::vector<CourantModel> courant_models() {
  return {
      CourantModel(LieAlgebra::abelian(2), Form<Rational>(2, 3)),
      CourantModel(LieAlgebra::abelian(3), f(3, {1, 2, 3})),
      CourantModel(heisenberg3(), Form<Rational>(3, 3)),
      CourantModel(heisenberg3_r(), f(4, {1, 2, 3})),
      CourantModel(heisenberg3_r(), f(4, {1, 2, 4}, -1)),
      CourantModel(su2(), f(3, {1, 2, 3}, 2)),
      CourantModel(filiform6(), Form<Rational>(6, 3)),
      CourantModel(algebra(8, {{1, 2, {{3, 1}}}, {4, 5, {{6, 1}}}}), f(8, {1, 2, 7}) + f(8, {4, 5, 8}, 3)),
  };
}

/// h3 + R^2 with a twist whose differential is -f1^f2^f4^f5.
inline CourantModel non_closed_probe() {
  return CourantModel::unchecked(algebra(5, {{1, 2, {{3, 1}}}}), f(5, {3, 4, 5}));
}

inline Section<Rational> random_section(std::mt19937& rng, std::size_t n) {
  return {random_vec(rng, n), random_vec(rng, n)};
}

}  // namespace gcred::testing

namespace gcred::testing {

/// Matrix with the given images of basis vectors (1-based), the rest mapped to zero.
inline Matrix<Rational> op(std::size_t n, const std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, long>>>>& images) {
  Matrix<Rational> m(n, n);
  for (const auto& [src, img] : images)
    for (const auto& [k, c] : img) m(k - 1, src - 1) += c;
  return m;
}

/// e1 -> e2 -> -e1, e3 -> e4 -> -e3, ...
inline Matrix<Rational> standard_complex(std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    m(k + 1, k) = 1;
    m(k, k + 1) = -1;
  }
  return m;
}

}  // namespace gcred::testing

#include "gcred/action.hpp"

namespace gcred::testing {

/// Abelian g acting trivially on h.
inline ExtendedAction action(const CourantModel& model, std::vector<Section<Rational>> g_images,
                             std::vector<Vec<Rational>> h_forms = {}) {
  auto algebra = CourantAlgebra::trivial(LieAlgebra::abelian(g_images.size()), h_forms.size());
  return ExtendedAction(model, std::move(algebra), std::move(g_images), std::move(h_forms));
}

inline Vec<Rational> zv(std::size_t n) { return zero_vec<Rational>(n); }

/// Abelian R^6, H = 0, X = e5, Psi(h) = f6.
inline ExtendedAction flat6_action() {
  CourantModel m(LieAlgebra::abelian(6), Form<Rational>(6, 3));
  return action(m, {sec(e(6, 5), zv(6))}, {e(6, 6)});
}

/// h3 + R, H = 0, X = e3, xi = f4.
inline ExtendedAction flux_action() {
  CourantModel m(heisenberg3_r(), Form<Rational>(4, 3));
  return action(m, {sec(e(4, 3), e(4, 4))});
}

}  // namespace gcred::testing

#include "gcred/metric.hpp"

namespace gcred::testing {

inline GeneralizedMetric flat_metric(std::size_t n) {
  return GeneralizedMetric::from_gb(Matrix<Rational>::identity(n), Form<Rational>(n, 2));
}

/// On each 4-block: I e1 = e2, I e3 = e4; J e1 = e3, J e2 = -e4; K = IJ.
inline std::array<Matrix<Rational>, 3> quaternionic(std::size_t blocks) {
  const std::size_t n = 4 * blocks;
  Matrix<Rational> i(n, n), j(n, n);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t o = 4 * b;
    i(o + 1, o) = 1;
    i(o, o + 1) = -1;
    i(o + 3, o + 2) = 1;
    i(o + 2, o + 3) = -1;
    j(o + 2, o) = 1;
    j(o, o + 2) = -1;
    j(o + 3, o + 1) = -1;
    j(o + 1, o + 3) = 1;
  }
  return {i, j, i * j};
}

}  // namespace gcred::testing
