#include <gtest/gtest.h>

#include <random>

#include "gcred/action.hpp"
#include "support.hpp"

using namespace gcred;
using namespace gcred::testing;
using R = Rational;
using M = Matrix<R>;

namespace {

// g = R acting on h = R^2 by a nilpotent matrix.
CourantAlgebra nilpotent_module() {
  M rho(2, 2);
  rho(0, 1) = 1;
  return CourantAlgebra(LieAlgebra::abelian(1), 2, {rho});
}

M block_lie_derivative(const LieAlgebra& L, const Vec<R>& x) {
  const std::size_t n = L.dim();
  M ad = L.ad(x);
  M out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = ad(r, c);
      out(n + r, n + c) = -ad(c, r);
    }
  return out;
}

}  // namespace

TEST(CourantAlgebra, HemisemidirectBracket) {
  auto a = nilpotent_module();
  AlgebraElement g1{{R(1)}, {R(0), R(0)}};
  AlgebraElement l2{{R(0)}, {R(0), R(1)}};
  EXPECT_EQ(hemi_bracket(a, g1, l2), (AlgebraElement{{R(0)}, {R(1), R(0)}}));
  EXPECT_EQ(hemi_bracket(a, l2, g1), (AlgebraElement{{R(0)}, {R(0), R(0)}}));
  EXPECT_TRUE(check_courant_algebra(a).passed());
  EXPECT_EQ(a.label(0), "a1");
  EXPECT_EQ(a.label(2), "l2");
}

TEST(CourantAlgebra, LeibnizOnRandomElements) {
  std::mt19937 rng(3);
  M r1(1, 1), r2(1, 1), r3(1, 1);
  r3(0, 0) = 1;
  // solvable3 acts on R through the character e1 -> 1.
  CourantAlgebra a(solvable3(), 1, {r3, r1, r2});
  EXPECT_TRUE(check_courant_algebra(a).passed());
  auto rnd = [&] { return AlgebraElement{random_vec(rng, 3), random_vec(rng, 1)}; };
  for (int t = 0; t < 30; ++t) {
    auto x = rnd(), y = rnd(), z = rnd();
    auto lhs = hemi_bracket(a, x, hemi_bracket(a, y, z));
    auto xy = hemi_bracket(a, x, y);
    auto a1 = hemi_bracket(a, xy, z);
    auto a2 = hemi_bracket(a, y, hemi_bracket(a, x, z));
    EXPECT_EQ(lhs, (AlgebraElement{add(a1.gamma, a2.gamma), add(a1.lambda, a2.lambda)}));
  }
}

TEST(CourantAlgebra, RejectsNonRepresentation) {
  M zero(1, 1), one(1, 1);
  one(0, 0) = 1;
  EXPECT_THROW(CourantAlgebra(heisenberg3(), 1, {zero, zero, one}), GcredError);
  EXPECT_THROW(CourantAlgebra(LieAlgebra::abelian(2), 1, {zero}), GcredError);
}

TEST(ValidateAction, FlatSixPasses) {
  auto rep = validate_action(flat6_action());
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks().size(), 3u);
}

TEST(ValidateAction, NonClosedForm) {
  CourantModel m(heisenberg3_r(), Form<R>(4, 3));
  auto rep = validate_action(action(m, {}, {e(4, 3)}));
  EXPECT_FALSE(rep.at("closed h-forms").passed);
  EXPECT_EQ(rep.at("closed h-forms").detail, "l1: d Psi = -f1^f2");
}

TEST(ValidateAction, SplittingNotPreserved) {
  CourantModel m(heisenberg3_r(), f(4, {1, 2, 4}, -1));
  auto bad = validate_action(action(m, {sec(e(4, 4), zv(4))}));
  EXPECT_TRUE(bad.at("bracket morphism").passed);
  EXPECT_FALSE(bad.at("splitting preserved").passed);
  EXPECT_EQ(bad.at("splitting preserved").detail, "a1: i_X H - d xi = -f1^f2");
  // d f3 = -f1^f2 = i_{e4} H
  EXPECT_TRUE(validate_action(action(m, {sec(e(4, 4), e(4, 3))})).passed());
}

TEST(ValidateAction, NotAMorphism) {
  CourantModel m(heisenberg3(), Form<R>(3, 3));
  auto rep = validate_action(action(m, {sec(e(3, 1), zv(3)), sec(e(3, 2), zv(3))}));
  EXPECT_FALSE(rep.at("bracket morphism").passed);
  EXPECT_NE(rep.at("bracket morphism").detail.find("(a1, a2)"), std::string::npos);
}

TEST(ValidateAction, FreeAction) {
  CourantModel m(LieAlgebra::abelian(3), Form<R>(3, 3));
  EXPECT_TRUE(check_free(action(m, {sec(e(3, 1), zv(3))})).passed);
  EXPECT_FALSE(check_free(action(m, {sec(e(3, 1), zv(3)), sec(scale(R(2), e(3, 1)), e(3, 2))})).passed);
  EXPECT_FALSE(check_free(action(m, {sec(zv(3), e(3, 2))})).passed);
}

TEST(KSpaces, FlatSix) {
  auto ks = k_spaces(flat6_action());
  EXPECT_EQ(ks.k.dim(), 2u);
  EXPECT_EQ(ks.k_perp.dim(), 10u);
  EXPECT_EQ(ks.k_meet, ks.k);
  for (const auto& v : ks.k_perp.basis()) {
    EXPECT_EQ(v[5], R(0));       // Y^6
    EXPECT_EQ(v[6 + 4], R(0));   // eta_5
  }
}

TEST(KSpaces, Isotropy) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  auto iso = action(m, {sec(e(2, 1), e(2, 2))});
  EXPECT_TRUE(is_isotropic(iso).isotropic);
  EXPECT_EQ(k_spaces(iso).k_meet.dim(), 1u);
  auto non = action(m, {sec(e(2, 1), e(2, 1))});
  auto r = is_isotropic(non);
  EXPECT_FALSE(r.isotropic);
  EXPECT_EQ(r.witness, "<a1, a1> = 1");
  EXPECT_EQ(k_spaces(non).k_meet.dim(), 0u);
  auto mixed = action(m, {sec(e(2, 1), zv(2))}, {e(2, 1)});
  EXPECT_EQ(is_isotropic(mixed).witness, "<a1, l1> = 1/2");
}

TEST(KSpaces, MetricComplement) {
  auto check = [](const ExtendedAction& a, std::size_t expected) {
    const std::size_t n = a.model().dim();
    auto metric = GeneralizedMetric::from_gb(M::identity(n), Form<R>(n, 2));
    auto kg = k_metric_complement(a, metric);
    auto ks = k_spaces(a);
    EXPECT_EQ(kg.dim(), expected);
    EXPECT_EQ(kg.dim(), 2 * n - 2 * ks.k.dim());
    EXPECT_EQ(kg.image(metric.op()), kg);
    EXPECT_EQ(join(kg, ks.k), ks.k_perp);
    EXPECT_EQ(meet(kg, ks.k).dim(), 0u);
  };
  check(flat6_action(), 8);
  check(flux_action(), 6);
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_EQ(k_metric_complement(action(m, {}), GeneralizedMetric::from_gb(M::identity(2), Form<R>(2, 2))).dim(), 4u);
  EXPECT_THROW(k_metric_complement(action(m, {sec(e(2, 1), e(2, 1))}),
                                   GeneralizedMetric::from_gb(M::identity(2), Form<R>(2, 2))),
               GcredError);
}

TEST(Adjoint, EqualsLieDerivativeWhenSplittingPreserved) {
  CourantModel h3(heisenberg3(), Form<R>(3, 3));
  auto a = action(h3, {sec(e(3, 1), zv(3))});
  ASSERT_TRUE(validate_action(a).passed());
  EXPECT_EQ(adjoint_matrix(a, 0), block_lie_derivative(h3.algebra(), e(3, 1)));
  CourantModel m(heisenberg3_r(), f(4, {1, 2, 4}, -1));
  auto b = action(m, {sec(add(e(4, 4), e(4, 1)), e(4, 3))});
  auto c = action(m, {sec(e(4, 4), e(4, 3))});
  ASSERT_TRUE(validate_action(c).passed());
  EXPECT_EQ(adjoint_matrix(c, 0), block_lie_derivative(m.algebra(), e(4, 4)));
  EXPECT_FALSE(validate_action(b).passed());
}

TEST(Adjoint, PreservedOperators) {
  auto flat = flat6_action();
  auto metric = GeneralizedMetric::from_gb(M::identity(6), Form<R>(6, 2));
  EXPECT_TRUE(check_preserves_operator(flat, metric.op(), "G").passed);
  EXPECT_TRUE(check_preserves_tangent_operator(flat, standard_complex(6), "I").passed);
  CourantModel h3(heisenberg3(), Form<R>(3, 3));
  auto a = action(h3, {sec(e(3, 1), zv(3))});
  auto g = GeneralizedMetric::from_gb(M::identity(3), Form<R>(3, 2));
  auto c = check_preserves_operator(a, g.op(), "G");
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.detail, "a1 does not commute with G");
}
