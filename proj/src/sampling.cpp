#include "gcred/sampling.hpp"

#include "gcred/reduction.hpp"
#include "gcred/structures.hpp"

namespace gcred {

namespace {

Matrix<Rational> lie_derivative_matrix(const LieAlgebra& L, const Vec<Rational>& x) {
  const std::size_t n = L.dim();
  Matrix<Rational> ad = L.ad(x);
  Matrix<Rational> out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = ad(r, c);
      out(n + r, n + c) = -ad(c, r);
    }
  return out;
}

void append_entries(Vec<Rational>& out, const Matrix<Rational>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
}

Vec<Rational> small_combination(std::mt19937& rng, const std::vector<Vec<Rational>>& basis, std::size_t n) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  Vec<Rational> out = zero_vec<Rational>(n);
  for (const auto& v : basis) out = add(out, scale(Rational(coeff(rng)), v));
  return out;
}

}  // namespace

Subspace<Rational> preserving_directions(const CourantModel& model, const GeneralizedMetric& metric,
                                         const std::vector<Matrix<Rational>>& operators) {
  const auto& L = model.algebra();
  const std::size_t n = L.dim();
  Matrix<Rational> d1 = differential_matrix(L, 1);
  auto exact = Subspace<Rational>::column_space(d1);
  auto not_exact = annihilator(exact);
  std::vector<Vec<Rational>> columns;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = unit_vec<Rational>(n, i);
    Vec<Rational> cond;
    Matrix<Rational> lx = lie_derivative_matrix(L, x);
    append_entries(cond, lx * metric.op() - metric.op() * lx);
    Matrix<Rational> ad = L.ad(x);
    for (const auto& op : operators) append_entries(cond, ad * op - op * ad);
    Vec<Rational> ixh = form_coordinates(interior(x, model.twist()));
    for (const auto& row : not_exact.basis()) cond.push_back(dot(row, ixh));
    columns.push_back(cond);
  }
  return Subspace<Rational>::span(kernel(Matrix<Rational>::from_columns(columns, columns.front().size())), n);
}

std::optional<ExtendedAction> random_preserved_action(const CourantModel& model, const GeneralizedMetric& metric,
                                                      const std::vector<Matrix<Rational>>& operators,
                                                      std::mt19937& rng, const SamplingOptions& options) {
  const auto& L = model.algebra();
  const std::size_t n = L.dim();
  auto directions = preserving_directions(model, metric, operators);
  if (directions.dim() == 0) return std::nullopt;
  std::vector<Vec<Rational>> closed1;
  for (const auto& f : closed_forms(L, 1)) closed1.push_back(f.components());
  std::uniform_int_distribution<int> coin(0, 1);

  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    std::size_t kmax = std::min(options.max_generators, directions.dim());
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, kmax)(rng);
    std::vector<Vec<Rational>> xs;
    for (std::size_t j = 0; j < k; ++j) xs.push_back(small_combination(rng, directions.basis(), n));
    if (Subspace<Rational>::span(xs, n).dim() != k) continue;

    // xi_j = primitive of i_X H + closed, with xi_j(X_j) = 0 and xi_j(X_i) = -xi_i(X_j) for i < j.
    std::vector<Vec<Rational>> xis;
    bool solvable = true;
    bool plain = coin(rng) == 0;
    for (std::size_t j = 0; j < k && solvable; ++j) {
      auto prim = primitive(L, interior(xs[j], model.twist()));
      if (!prim) {
        solvable = false;
        break;
      }
      Vec<Rational> base = prim->components();
      if (closed1.empty()) {
        xis.push_back(base);
        continue;
      }
      const std::size_t z = closed1.size();
      Matrix<Rational> a(j + 1, z);
      Vec<Rational> rhs(j + 1);
      for (std::size_t i = 0; i <= j; ++i) {
        for (std::size_t t = 0; t < z; ++t) a(i, t) = dot(closed1[t], xs[i]);
        rhs[i] = (i == j ? Rational(0) : Rational(-dot(xis[i], xs[j]))) - dot(base, xs[i]);
      }
      auto t0 = solve(a, rhs);
      if (!t0) {
        solvable = false;
        break;
      }
      Vec<Rational> t = *t0;
      if (!plain) t = add(t, small_combination(rng, kernel(a), z));
      Vec<Rational> xi = base;
      for (std::size_t q = 0; q < z; ++q) xi = add(xi, scale(t[q], closed1[q]));
      xis.push_back(xi);
    }
    if (!solvable) continue;

    // Moment forms: closed 1-forms vanishing on every generator, optionally g(op X).
    std::vector<Vec<Rational>> conditions;
    for (const auto& x : xs) conditions.push_back(x);
    std::vector<Vec<Rational>> candidates;
    if (coin(rng) == 0) {
      for (const auto& op : operators)
        for (const auto& x : xs) candidates.push_back(metric.g() * (op * x));
    } else {
      for (std::size_t q = 0; q < options.max_moment_forms; ++q) candidates.push_back(small_combination(rng, closed1, n));
    }
    std::vector<Vec<Rational>> nus;
    std::size_t limit = std::uniform_int_distribution<std::size_t>(0, options.max_moment_forms)(rng);
    for (const auto& c : candidates) {
      if (nus.size() >= limit) break;
      if (is_zero_vec(c) || !L.d(Form<Rational>::covector(c)).is_zero_form()) continue;
      bool vanishes = true;
      for (const auto& x : xs) vanishes = vanishes && is_zero(dot(c, x));
      if (!vanishes) continue;
      auto with = nus;
      with.push_back(c);
      if (Subspace<Rational>::span(with, n).dim() == with.size()) nus = with;
    }

    std::vector<Section<Rational>> images;
    for (std::size_t j = 0; j < k; ++j) images.push_back({xs[j], xis[j]});
    ExtendedAction action(model, CourantAlgebra::trivial(LieAlgebra::abelian(k), nus.size()), images, nus);
    if (!validate_action(action).passed() || !is_isotropic(action).isotropic || !check_free(action).passed) continue;
    if (!check_preserves_operator(action, metric.op(), "G").passed) throw InternalError("sampled action does not preserve G");
    try {
      reduce_metric(action, metric);
    } catch (const GcredError&) {
      continue;
    }
    return action;
  }
  return std::nullopt;
}

}  // namespace gcred
