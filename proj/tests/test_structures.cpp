#include <gtest/gtest.h>

#include <random>

#include "gcred/sampling.hpp"
#include "gcred/structures.hpp"
#include "support.hpp"

using namespace gcred;
using namespace gcred::testing;
using R = Rational;
using M = Matrix<R>;

namespace {

void expect_report_passes(const ValidationReport& rep) {
  for (const auto& c : rep.checks()) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

std::vector<std::string> failing(const ValidationReport& rep) {
  std::vector<std::string> out;
  for (const auto& c : rep.checks())
    if (!c.passed) out.push_back(c.name);
  return out;
}

// Closure of L = graph(b - i omega) over T^{1,0} by brute force on all vector pairs of a spanning set.
bool closes_by_hand(const CourantModel& m, const GeneralizedMetric& metric, const M& i) {
  auto l = skt_eigenspace(metric, i, Side::plus);
  for (const auto& a : l.basis())
    for (const auto& b : l.basis()) {
      auto br = m.bracket_direct(Section<Gaussian>::from_coordinates(a), Section<Gaussian>::from_coordinates(b));
      if (!l.contains(br.coordinates())) return false;
    }
  return true;
}

M op6_minus() {
  // e1 -> -e2, e3 -> e4, e5 -> e6
  return op(6, {{1, {{2, -1}}}, {2, {{1, 1}}}, {3, {{4, 1}}}, {4, {{3, -1}}}, {5, {{6, 1}}}, {6, {{5, -1}}}});
}

}  // namespace

TEST(ValidateSkt, FlatKahler) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  expect_report_passes(validate_skt(m, flat_metric(4), standard_complex(4)));
  expect_report_passes(validate_skt(m, flat_metric(4), standard_complex(4), Side::minus));
}

TEST(ValidateSkt, KodairaThurston) {
  auto L = heisenberg3_r();
  M i = standard_complex(4);
  auto dc = dc_operator(L, i, kahler_form(M::identity(4), i));
  CourantModel good(L, -dc);
  EXPECT_EQ(good.twist(), f(4, {1, 2, 3}, -1));
  expect_report_passes(validate_skt(good, flat_metric(4), i));
  EXPECT_TRUE(closes_by_hand(good, flat_metric(4), i));

  CourantModel zero(L, Form<R>(4, 3));
  auto rep = validate_skt(zero, flat_metric(4), i);
  EXPECT_EQ(failing(rep), (std::vector<std::string>{"eigenspace bracket closed", "torsion condition", "d^c omega = -db - H"}));
  EXPECT_NE(rep.at("torsion condition").detail.find("holomorphic vectors"), std::string::npos);
  EXPECT_FALSE(closes_by_hand(zero, flat_metric(4), i));

  CourantModel wrong(L, dc);
  EXPECT_FALSE(validate_skt(wrong, flat_metric(4), i).passed());
  // the V- side carries the opposite torsion
  expect_report_passes(validate_skt(wrong, flat_metric(4), i, Side::minus));
}

TEST(ValidateSkt, ClosedBPerturbations) {
  auto L = heisenberg3_r();
  M i = standard_complex(4);
  auto dc = dc_operator(L, i, kahler_form(M::identity(4), i));
  auto closed = closed_forms(L, 2);
  std::mt19937 rng(21);
  int nonzero_db = 0;
  for (int t = 0; t < 3; ++t) {
    Form<R> b(4, 2);
    for (const auto& c : closed) b += random_rational(rng) * c;
    b += random_rational(rng) * f(4, {3, 4});  // d(f3^f4) = -f1^f2^f4
    if (!L.d(b).is_zero_form()) ++nonzero_db;
    auto metric = GeneralizedMetric::from_gb(M::identity(4), b);
    CourantModel m(L, -dc - L.d(b));
    auto rep = validate_skt(m, metric, i);
    expect_report_passes(rep);
    EXPECT_TRUE(rep.at("d^c omega = -db - H").passed);
  }
  EXPECT_GT(nonzero_db, 0);
}

TEST(ValidateSkt, NonOrthogonalAndNonIntegrable) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  M g = M::from_rows({{R(2), R(0)}, {R(0), R(1)}}, 2);
  auto rep = validate_skt(m, GeneralizedMetric::from_gb(g, Form<R>(2, 2)), standard_complex(2));
  EXPECT_FALSE(rep.at("g-orthogonal").passed);
  EXPECT_FALSE(rep.passed());
  // h3 + h3 with e1 -> e4, e2 -> e5, e3 -> e6 is not integrable
  M i = op(6, {{1, {{4, 1}}}, {4, {{1, -1}}}, {2, {{5, 1}}}, {5, {{2, -1}}}, {3, {{6, 1}}}, {6, {{3, -1}}}});
  CourantModel h(heisenberg_pair(), Form<R>(6, 3));
  auto r2 = validate_skt(h, flat_metric(6), i);
  EXPECT_FALSE(r2.at("integrable").passed);
  EXPECT_FALSE(r2.at("eigenspace bracket closed").passed);
}

TEST(ValidateSkt, ClosureMatchesLemmaOnRandomData) {
  std::mt19937 rng(8);
  auto L = heisenberg3_r();
  int passes = 0;
  for (int t = 0; t < 25; ++t) {
    auto h = random_form(rng, 4, 3, 1);
    if (!L.d(h).is_zero_form()) continue;
    auto b = random_form(rng, 4, 2, 1);
    CourantModel m(L, h);
    auto metric = GeneralizedMetric::from_gb(M::identity(4), b);
    auto rep = validate_skt(m, metric, standard_complex(4));
    EXPECT_EQ(rep.at("eigenspace bracket closed").passed, rep.at("torsion condition").passed);
    EXPECT_EQ(rep.at("eigenspace bracket closed").passed, closes_by_hand(m, metric, standard_complex(4)));
    EXPECT_EQ(rep.at("torsion condition").passed, rep.at("d^c omega = -db - H").passed);
    passes += rep.passed();
  }
  (void)passes;
}

TEST(ReduceMetric, FlatSix) {
  auto mr = reduce_metric(flat6_action(), flat_metric(6));
  expect_report_passes(mr.report);
  auto span4 = Subspace<R>::span({e(6, 1), e(6, 2), e(6, 3), e(6, 4)}, 6);
  EXPECT_EQ(mr.tau_plus, span4);
  EXPECT_EQ(mr.tau_minus, span4);
  EXPECT_EQ(mr.reduced.g(), M::identity(4));
  EXPECT_TRUE(mr.reduced.b().is_zero_form());
}

TEST(ReduceMetric, SlantedTransversal) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  auto mr = reduce_metric(action(m, {sec(e(2, 1), e(2, 2))}), flat_metric(2));
  expect_report_passes(mr.report);
  EXPECT_EQ(mr.tau_plus, Subspace<R>::span({sub(e(2, 2), e(2, 1))}, 2));
  EXPECT_EQ(mr.tau_minus, Subspace<R>::span({add(e(2, 2), e(2, 1))}, 2));
  EXPECT_EQ(mr.reduced.g(), M::from_rows({{R(2)}}, 1));
  EXPECT_EQ(mr.tau_plus_lifts, M::from_columns({sub(e(2, 2), e(2, 1))}, 2));
  // theta is the g-orthogonal connection f1, chi solves g(Y^h, e1) + f2(chi) = 0 = g(chi, e1) + f2(Y^h)
  EXPECT_EQ(mr.theta, M::from_rows({{R(1), R(0)}}, 2));
  EXPECT_EQ(mr.chi, M::from_rows({{R(0), R(-1)}}, 2));
  EXPECT_EQ(mr.theta_plus, M::from_rows({{R(1), R(1)}}, 2));
}

TEST(ReduceMetric, BFieldSeparatesTau) {
  CourantModel m(LieAlgebra::abelian(3), Form<R>(3, 3));
  auto metric = GeneralizedMetric::from_gb(M::identity(3), f(3, {1, 3}));
  auto mr = reduce_metric(action(m, {sec(e(3, 3), zv(3))}), metric);
  expect_report_passes(mr.report);
  EXPECT_NE(mr.tau_plus, mr.tau_minus);
  EXPECT_EQ(mr.tau_plus, Subspace<R>::span({sub(e(3, 1), e(3, 3)), e(3, 2)}, 3));
  EXPECT_EQ(mr.tau_minus, Subspace<R>::span({add(e(3, 1), e(3, 3)), e(3, 2)}, 3));
}

TEST(ReduceMetric, Preconditions) {
  CourantModel h3(heisenberg3(), Form<R>(3, 3));
  EXPECT_THROW(reduce_metric(action(h3, {sec(e(3, 1), zv(3))}), flat_metric(3)), GcredError);
  // g(e1, e1) = -f2(e1)... e1 + f1 is not isotropic
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_THROW(reduce_metric(action(m, {sec(e(2, 1), e(2, 1))}), flat_metric(2)), GcredError);
}

TEST(ReducedCurvature, FluxGeneration) {
  auto a = flux_action();
  auto mr = reduce_metric(a, flat_metric(4));
  expect_report_passes(mr.report);
  auto rc = reduced_metric_curvature(a, mr);
  EXPECT_TRUE(rc.agree);
  EXPECT_EQ(rc.via_db, f(3, {1, 2, 3}, -1));
  EXPECT_EQ(rc.via_f, f(3, {1, 2, 3}, -1));
  EXPECT_EQ(rc.via_splitting, f(3, {1, 2, 3}, -1));
}

TEST(ReducedCurvature, KahlerTypeIsFlat) {
  auto a = flat6_action();
  auto rc = reduced_metric_curvature(a, reduce_metric(a, flat_metric(6)));
  EXPECT_TRUE(rc.via_db.is_zero_form());
  EXPECT_TRUE(rc.via_f.is_zero_form());
}

TEST(ReducedCurvature, SlantedWithBField) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto metric = GeneralizedMetric::from_gb(M::identity(4), f(4, {1, 4}) + f(4, {2, 3}, 2));
  auto a = action(m, {sec(e(4, 4), e(4, 3))}, {});
  auto mr = reduce_metric(a, metric);
  expect_report_passes(mr.report);
  EXPECT_TRUE(reduced_metric_curvature(a, mr).agree);
}

TEST(ReduceSkt, FlatSixKahler) {
  auto r = reduce_skt(flat6_action(), flat_metric(6), standard_complex(6));
  EXPECT_TRUE(r.criterion.passed);
  expect_report_passes(r.report);
  ASSERT_TRUE(r.reduced_i.has_value());
  EXPECT_EQ(*r.reduced_i, standard_complex(4));
  EXPECT_TRUE(r.metric.base.reduced_model.twist().is_zero_form());
}

TEST(ReduceSkt, OddTransversalFails) {
  CourantModel m(LieAlgebra::abelian(6), Form<R>(6, 3));
  auto r = reduce_skt(action(m, {sec(e(6, 4), zv(6))}), flat_metric(6), standard_complex(6));
  EXPECT_FALSE(r.criterion.passed);
  EXPECT_EQ(r.criterion.detail, "I(e3) = e4 is not in tau+");
  EXPECT_FALSE(r.reduced_i.has_value());
}

TEST(ReduceSkt, SlantedCriterionFails) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  auto r = reduce_skt(action(m, {sec(e(2, 1), e(2, 2))}), flat_metric(2), standard_complex(2));
  EXPECT_FALSE(r.criterion.passed);
  EXPECT_EQ(r.criterion.detail, "I(e1 - e2) = e1 + e2 is not in tau+");
}

TEST(ReduceSkt, KahlerMomentAction) {
  // X = e1 with moment form g(I e1) = f2 on flat R^4 reduces to flat R^2
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto r = reduce_skt(action(m, {sec(e(4, 1), zv(4))}, {e(4, 2)}), flat_metric(4), standard_complex(4));
  EXPECT_TRUE(r.criterion.passed);
  expect_report_passes(r.report);
  EXPECT_EQ(*r.reduced_i, standard_complex(2));
}

TEST(ReduceSkt, RequiresSktUpstairs) {
  CourantModel m(heisenberg3_r(), Form<R>(4, 3));
  auto a = action(m, {sec(e(4, 4), zv(4))});
  EXPECT_THROW(reduce_skt(a, flat_metric(4), standard_complex(4)), GcredError);
}

TEST(ReduceSkt, KodairaThurstonCentralCircle) {
  auto L = heisenberg3_r();
  M i = standard_complex(4);
  CourantModel m(L, -dc_operator(L, i, kahler_form(M::identity(4), i)));
  auto r = reduce_skt(action(m, {sec(e(4, 4), zv(4))}), flat_metric(4), i);
  EXPECT_FALSE(r.criterion.passed);
  EXPECT_EQ(r.criterion.detail, "I(e3) = e4 is not in tau+");
}

TEST(ReduceHkt, FlatEight) {
  CourantModel m(LieAlgebra::abelian(8), Form<R>(8, 3));
  auto q = quaternionic(2);
  auto full = action(m, {sec(e(8, 5), zv(8))}, {e(8, 6), e(8, 7), e(8, 8)});
  auto r = reduce_hkt(full, flat_metric(8), q);
  expect_report_passes(r.report);
  ASSERT_TRUE(r.reduced.has_value());
  auto q1 = quaternionic(1);
  EXPECT_EQ((*r.reduced)[0], q1[0]);
  EXPECT_EQ((*r.reduced)[1], q1[1]);
  EXPECT_EQ((*r.reduced)[2], q1[2]);

  auto partial = action(m, {sec(e(8, 5), zv(8))}, {e(8, 6)});
  auto p = reduce_hkt(partial, flat_metric(8), q);
  EXPECT_EQ(failing(p.report), (std::vector<std::string>{"J criterion", "K criterion"}));
  EXPECT_EQ(p.report.at("J criterion").detail, "J(e7) = -e5 is not in tau+");
  EXPECT_FALSE(p.reduced.has_value());
}

TEST(ReduceHkt, TrivialAction) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto q = quaternionic(1);
  auto r = reduce_hkt(action(m, {}), flat_metric(4), q);
  expect_report_passes(r.report);
  EXPECT_EQ((*r.reduced)[1], q[1]);
}

TEST(ReduceHkt, RejectsBrokenRelations) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto q = quaternionic(1);
  q[2] = -q[2];
  EXPECT_THROW(reduce_hkt(action(m, {}), flat_metric(4), q), GcredError);
}

TEST(Gk, KahlerAsGk) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto gk = gk_from_bihermitian(flat_metric(4), standard_complex(4), standard_complex(4));
  auto v = validate_gk(m, gk);
  expect_report_passes(v.report);
  ASSERT_TRUE(v.data.has_value());
  EXPECT_EQ(v.data->i_plus, standard_complex(4));
  EXPECT_EQ(v.data->i_minus, standard_complex(4));
  EXPECT_TRUE(v.data->metric.b().is_zero_form());
}

TEST(Gk, NotCommuting) {
  CourantModel m(LieAlgebra::abelian(4), Form<R>(4, 3));
  auto a = gk_from_bihermitian(flat_metric(4), standard_complex(4), standard_complex(4));
  auto q = quaternionic(1);
  auto b = gk_from_bihermitian(flat_metric(4), q[1], q[1]);
  auto v = validate_gk(m, {a.j1, b.j1});
  EXPECT_FALSE(v.report.at("[J1, J2] = 0").passed);
}

TEST(Gk, FlatSixBihermitianReduction) {
  CourantModel m(LieAlgebra::abelian(6), Form<R>(6, 3));
  auto gk = gk_from_bihermitian(flat_metric(6), standard_complex(6), op6_minus());
  expect_report_passes(validate_gk(m, gk).report);
  auto r = reduce_gk(action(m, {sec(e(6, 5), zv(6))}, {e(6, 6)}), gk);
  expect_report_passes(r.report);
  ASSERT_TRUE(r.reduced_data.has_value());
  EXPECT_EQ(r.reduced_data->i_plus, standard_complex(4));
  EXPECT_EQ(r.reduced_data->i_minus, op6_minus().select({0, 1, 2, 3}, {0, 1, 2, 3}));
  EXPECT_TRUE(r.report.at("reduced d^c_- omega_- = -d^c_+ omega_+ = H + db").passed);
}

TEST(Gk, TwistedBihermitianOnKt) {
  // I+ = I on KT with H = -d^c omega; I- with opposite orientation on the second pair fails the identity
  auto L = heisenberg3_r();
  M i = standard_complex(4);
  auto dc = dc_operator(L, i, kahler_form(M::identity(4), i));
  CourantModel m(L, -dc);
  auto gk = gk_from_bihermitian(flat_metric(4), i, i);
  auto v = validate_gk(m, gk);
  EXPECT_FALSE(v.report.at("d^c_- omega_- = -d^c_+ omega_+ = H + db").passed);
}

TEST(Sampling, PreservedActionsReduce) {
  std::mt19937 rng(2);
  CourantModel m(LieAlgebra::abelian(6), Form<R>(6, 3));
  auto metric = flat_metric(6);
  int found = 0, criterion = 0;
  for (int t = 0; t < 30; ++t) {
    auto a = random_preserved_action(m, metric, {standard_complex(6)}, rng);
    if (!a) continue;
    ++found;
    auto mr = reduce_metric(*a, metric);
    expect_report_passes(mr.report);
    EXPECT_TRUE(reduced_metric_curvature(*a, mr).agree);
    auto s = reduce_skt(*a, mr, standard_complex(6));
    if (s.criterion.passed) {
      ++criterion;
      expect_report_passes(s.report);
    }
  }
  EXPECT_GT(found, 20);
  EXPECT_GT(criterion, 0);
}

TEST(Sampling, KodairaThurstonDirections) {
  auto L = heisenberg3_r();
  M i = standard_complex(4);
  CourantModel m(L, -dc_operator(L, i, kahler_form(M::identity(4), i)));
  auto dirs = preserving_directions(m, flat_metric(4), {i});
  EXPECT_EQ(dirs, Subspace<R>::span({e(4, 3), e(4, 4)}, 4));
}
