#include <gtest/gtest.h>

#include <random>

#include "gcred/reduction.hpp"
#include "support.hpp"

using namespace gcred;
using namespace gcred::testing;
using R = Rational;
using M = Matrix<R>;

namespace {

void expect_report_passes(const ValidationReport& rep) {
  for (const auto& c : rep.checks()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

// Sections of the reduced model obtained by hand: lift, bracket upstairs, project.
Vec<R> bracket_via_lifts(const ExtendedAction& a, const ReductionResult& r, const Vec<R>& u, const Vec<R>& v) {
  return r.projection * a.model().bracket_coordinates(r.lift(u), r.lift(v));
}

}  // namespace

TEST(Restrict, GeneratorOutsideAnnihilator) {
  CourantModel m(heisenberg3_r(), Form<R>(4, 3));
  auto a = action(m, {sec(e(4, 4), zv(4))}, {e(4, 4)});
  try {
    restrict_action(a);
    FAIL() << "expected an error";
  } catch (const GcredError& err) {
    EXPECT_NE(std::string(err.what()).find("a1 is not tangent"), std::string::npos);
  }
  EXPECT_THROW(reduce(a), GcredError);
}

TEST(Restrict, FlatSixDropsMomentForm) {
  auto r = restrict_action(flat6_action());
  EXPECT_EQ(r.p.dim(), 5u);
  EXPECT_TRUE(r.model.algebra().is_abelian());
  EXPECT_EQ(r.action.g_images()[0].x, e(5, 5));
  EXPECT_EQ(r.inclusion * r.action.g_images()[0].x, e(6, 5));
}

TEST(Restrict, PullsBackTwist) {
  // h3 + R^2 with H = f1^f2^f5, moment form f4 (closed).
  CourantModel m(algebra(5, {{1, 2, {{3, 1}}}}), f(5, {1, 2, 5}));
  auto a = action(m, {sec(e(5, 3), zv(5))}, {e(5, 4)});
  ASSERT_TRUE(validate_action(a).passed());
  auto r = restrict_action(a);
  EXPECT_EQ(r.model.twist(), f(4, {1, 2, 4}));
  EXPECT_EQ(r.model.algebra(), heisenberg3_r());
}

TEST(Straighten, FluxExample) {
  auto a = flux_action();
  auto theta = default_connection(a, M::identity(4));
  ASSERT_EQ(theta.size(), 1u);
  EXPECT_EQ(theta[0], e(4, 3));
  auto b = straighten(a, theta);
  EXPECT_EQ(b, f(4, {3, 4}));
  EXPECT_EQ(a.model().algebra().d(b), f(4, {1, 2, 4}, -1));
  EXPECT_THROW(straighten(a, {e(4, 4)}), GcredError);
}

TEST(Straighten, SelfPairingTerm) {
  // xi(X) != 0 is impossible for isotropic single generators; two generators with xi_2(X_1) = -xi_1(X_2).
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto a = action(m, {sec(e(4, 1), e(4, 2)), sec(e(4, 2), scale(R(-1), e(4, 1)))});
  ASSERT_TRUE(is_isotropic(a).isotropic);
  auto b = straighten(a, {e(4, 1), e(4, 2)});
  for (const auto& s : a.g_images()) EXPECT_EQ(interior(s.x, b).components(), s.xi);
  EXPECT_EQ(b, f(4, {1, 2}));
}

TEST(Straighten, RandomIsotropicGenerators) {
  std::mt19937 rng(11);
  const std::size_t n = 6;
  CourantModel m(LieAlgebra::abelian(n), Form<R>(n, 3));
  for (int t = 0; t < 30; ++t) {
    // X_i = e_i (i = 1, 2), xi_i random with xi_1(X_2) + xi_2(X_1) = 0 and xi_i(X_i) = 0.
    auto x1 = random_vec(rng, n), x2 = random_vec(rng, n);
    x1[0] = 0;
    x2[1] = 0;
    x2[0] = -x1[1];
    auto a = action(m, {sec(e(n, 1), x1), sec(e(n, 2), x2)});
    ASSERT_TRUE(is_isotropic(a).isotropic);
    auto b = straighten(a, {e(n, 1), e(n, 2)});
    for (const auto& s : a.g_images()) EXPECT_EQ(interior(s.x, b).components(), s.xi);
  }
}

TEST(Quotient, RejectsNonIdeal) {
  CourantModel m(heisenberg3(), Form<R>(3, 3));
  M x = M::from_columns({e(3, 1)}, 3);
  EXPECT_THROW(quotient_reduce(m, x), GcredError);
}

TEST(Quotient, RejectsNonBasicTwist) {
  CourantModel m(LieAlgebra::abelian(3), f(3, {1, 2, 3}));
  M x = M::from_columns({e(3, 3)}, 3);
  EXPECT_THROW(quotient_reduce(m, x), GcredError);
}

TEST(Reduce, FlatSix) {
  auto a = flat6_action();
  auto r = reduce(a);
  expect_report_passes(r.report);
  EXPECT_EQ(r.reduced_dim(), 4u);
  EXPECT_TRUE(r.reduced_model.algebra().is_abelian());
  EXPECT_TRUE(r.reduced_model.twist().is_zero_form());
  EXPECT_EQ(r.representatives_in_m(), M::from_columns({e(6, 1), e(6, 2), e(6, 3), e(6, 4)}, 6));
}

TEST(Reduce, FluxGeneration) {
  auto a = flux_action();
  auto r = reduce(a);
  expect_report_passes(r.report);
  EXPECT_EQ(r.straightening_b, f(4, {3, 4}));
  EXPECT_EQ(r.straightened_twist, f(4, {1, 2, 4}, -1));
  EXPECT_EQ(r.reduced_dim(), 3u);
  EXPECT_TRUE(r.reduced_model.algebra().is_abelian());
  EXPECT_EQ(r.representatives_in_m(), M::from_columns({e(4, 1), e(4, 2), e(4, 4)}, 4));
  EXPECT_EQ(r.reduced_model.twist(), f(3, {1, 2, 3}, -1));
  EXPECT_TRUE(exactness_check(a).passed);
  // [[e1, e2]] = i_{e2} i_{e1} H = -f3 on the reduced model
  Vec<R> e1 = unit_vec<R>(6, 0), e2 = unit_vec<R>(6, 1);
  EXPECT_EQ(bracket_via_lifts(a, r, e1, e2), scale(R(-1), unit_vec<R>(6, 5)));
  EXPECT_EQ(r.reduced_model.bracket_coordinates(e1, e2), scale(R(-1), unit_vec<R>(6, 5)));
}

TEST(Reduce, HeisenbergCentre) {
  CourantModel m(heisenberg3(), Form<R>(3, 3));
  auto a = action(m, {sec(e(3, 3), zv(3))});
  auto r = reduce(a);
  expect_report_passes(r.report);
  EXPECT_EQ(r.reduced_dim(), 2u);
  EXPECT_TRUE(r.reduced_model.algebra().is_abelian());
  EXPECT_TRUE(r.reduced_model.twist().is_zero_form());
}

TEST(Reduce, NonCentralIdeal) {
  CourantModel m(solvable3(), Form<R>(3, 3));
  auto a = action(m, {sec(e(3, 2), zv(3))});
  auto r = reduce(a);
  expect_report_passes(r.report);
  EXPECT_EQ(r.reduced_model.algebra(), algebra(2, {{1, 2, {{2, 2}}}}));
}

TEST(Reduce, Preconditions) {
  CourantModel flat2(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_THROW(reduce(action(flat2, {sec(e(2, 1), e(2, 1))})), GcredError);
  EXPECT_THROW(reduce(action(flat2, {sec(zv(2), e(2, 1))})), GcredError);
  CourantModel h3(heisenberg3(), Form<R>(3, 3));
  EXPECT_THROW(reduce(action(h3, {sec(e(3, 1), zv(3))})), GcredError);
  CourantModel m(heisenberg3_r(), f(4, {1, 2, 4}, -1));
  EXPECT_THROW(reduce(action(m, {sec(e(4, 4), zv(4))})), GcredError);
}

TEST(Reduce, SuppliedConnectionMatchesDefault) {
  auto a = flux_action();
  ReduceOptions opts;
  opts.connection = std::vector<Vec<R>>{e(4, 3)};
  auto r = reduce(a, opts);
  EXPECT_EQ(r.reduced_model.twist(), reduce(a).reduced_model.twist());
  // theta = f3 + f4 straightens differently but reduces to an isomorphic model
  opts.connection = std::vector<Vec<R>>{add(e(4, 3), e(4, 4))};
  auto s = reduce(a, opts);
  expect_report_passes(s.report);
  EXPECT_EQ(s.reduced_dim(), 3u);
}

TEST(Reduce, SlantedTransversal) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  auto a = action(m, {sec(e(2, 1), e(2, 2))});
  auto r = reduce(a);
  expect_report_passes(r.report);
  EXPECT_EQ(r.reduced_dim(), 1u);
  EXPECT_EQ(r.straightening_b, f(2, {1, 2}));
}

TEST(Reduce, Idempotent) {
  // reducing the reduced flat model by the trivial action changes nothing
  auto r = reduce(flat6_action());
  auto again = reduce(action(r.reduced_model, {}));
  EXPECT_EQ(again.reduced_model.algebra(), r.reduced_model.algebra());
  EXPECT_EQ(again.reduced_model.twist(), r.reduced_model.twist());
  EXPECT_EQ(again.projection, M::identity(8));
}

TEST(BracketOracle, LiftIndependence) {
  std::mt19937 rng(5);
  CourantModel sol(solvable3(), Form<R>(3, 3));
  CourantModel eight = courant_models()[7];
  std::vector<ExtendedAction> actions = {
      flat6_action(),
      flux_action(),
      action(sol, {sec(e(3, 2), zv(3))}),
      action(CourantModel(LieAlgebra::abelian(2), Form<R>(2, 3)), {sec(e(2, 1), e(2, 2))}),
      action(eight, {sec(e(8, 3), zv(8)), sec(e(8, 6), zv(8))}),
  };
  for (const auto& a : actions) {
    auto r = reduce(a);
    auto rep = reduced_bracket_oracle(a, r, rng, 100);
    expect_report_passes(rep);
  }
}
