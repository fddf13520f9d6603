#include <gtest/gtest.h>

#include <random>

#include "gcred/courant.hpp"
#include "support.hpp"

using namespace gcred;
using namespace gcred::testing;
using R = Rational;

namespace {

Vec<R> zero(std::size_t n) { return zero_vec<R>(n); }

// 2 <[[X + i_X beta, Y + i_Y beta]], Z + i_Z beta> from the term-by-term bracket.
Form<R> curvature_oracle(const CourantModel& m, const Form<R>& beta) {
  const std::size_t n = m.dim();
  auto sigma = [&](std::size_t i) {
    auto x = unit_vec<R>(n, i);
    return Section<R>{x, interior(x, beta).components()};
  };
  Form<R> out(n, 3);
  for (auto mask : masks_of_degree(n, 3)) {
    auto idx = mask_indices(mask);
    auto br = m.bracket_direct(sigma(idx[0]), sigma(idx[1]));
    auto z = sigma(idx[2]);
    R v = dot(br.xi, z.x) + dot(z.xi, br.x);
    out.add_term(mask, v);
  }
  return out;
}

}  // namespace

TEST(Pairing, Examples) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_EQ(m.pairing(sec(e(2, 1), e(2, 2)), sec(e(2, 2), e(2, 1))), R(1));
  EXPECT_EQ(m.pairing(sec(e(2, 1), e(2, 1)), sec(e(2, 1), e(2, 1))), R(1));
  EXPECT_EQ(m.pairing(sec(e(2, 1), e(2, 2)), sec(e(2, 1), e(2, 2))), R(0));
  EXPECT_THROW(m.pairing(sec(e(3, 1), e(3, 2)), sec(e(2, 1), e(2, 2))), std::invalid_argument);
}

TEST(Pairing, SymmetricNondegenerateMatrix) {
  for (const auto& m : courant_models()) {
    auto p = m.pairing_matrix();
    EXPECT_TRUE(p.is_symmetric());
    EXPECT_TRUE(inverse(p).has_value());
    std::mt19937 rng(1);
    auto a = random_section(rng, m.dim());
    auto b = random_section(rng, m.dim());
    EXPECT_EQ(m.pairing(a, b), dot(a.coordinates(), p * b.coordinates()));
  }
}

TEST(Bracket, Examples) {
  CourantModel flux(LieAlgebra::abelian(3), f(3, {1, 2, 3}));
  EXPECT_EQ(flux.bracket(sec(e(3, 1), zero(3)), sec(e(3, 2), zero(3))), sec(zero(3), e(3, 3)));
  CourantModel flat(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_EQ(flat.bracket(sec(e(2, 1), e(2, 2)), sec(e(2, 2), e(2, 1))), Section<R>::zero(2));
  CourantModel h(heisenberg3(), Form<R>(3, 3));
  EXPECT_EQ(h.bracket(sec(e(3, 1), zero(3)), sec(e(3, 2), zero(3))), sec(e(3, 3), zero(3)));
  EXPECT_EQ(h.bracket(sec(e(3, 1), zero(3)), sec(zero(3), e(3, 3))), sec(zero(3), scale(R(-1), e(3, 2))));
}

TEST(Bracket, TableMatchesDirectAndIsAntisymmetric) {
  std::mt19937 rng(2);
  for (const auto& m : courant_models()) {
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_section(rng, m.dim());
      auto b = random_section(rng, m.dim());
      EXPECT_EQ(m.bracket(a, b), m.bracket_direct(a, b));
      auto s = m.bracket(a, b).coordinates();
      EXPECT_TRUE(is_zero_vec(add(s, m.bracket(b, a).coordinates())));
    }
  }
}

TEST(Bracket, GaussianAgreesWithRational) {
  std::mt19937 rng(3);
  auto m = courant_models()[3];
  auto a = random_section(rng, 4);
  auto b = random_section(rng, 4);
  Section<Gaussian> ga{convert_vec<Gaussian>(a.x), convert_vec<Gaussian>(a.xi)};
  Section<Gaussian> gb{convert_vec<Gaussian>(b.x), convert_vec<Gaussian>(b.xi)};
  auto r = m.bracket(a, b);
  EXPECT_EQ(m.bracket(ga, gb).coordinates(), convert_vec<Gaussian>(r.coordinates()));
  EXPECT_EQ(m.bracket_direct(ga, gb).coordinates(), convert_vec<Gaussian>(r.coordinates()));
}

TEST(Axioms, HoldOnClosedModels) {
  for (const auto& m : courant_models()) {
    auto r = check_axioms(m);
    EXPECT_TRUE(r.passed()) << "dim " << m.dim();
    for (auto name : {"C1 Leibniz", "C2 anchor", "C3 function Leibniz", "C4 pairing", "C5 symmetric part"})
      EXPECT_TRUE(r.at(name).passed) << name;
    EXPECT_NE(r.at("C3 function Leibniz").detail.find("constant functions only"), std::string::npos);
  }
}

TEST(Axioms, AbelianUntwistedDegenerate) {
  CourantModel m(LieAlgebra::abelian(3), Form<R>(3, 3));
  EXPECT_TRUE(check_axioms(m).passed());
  EXPECT_EQ(m.bracket(sec(e(3, 1), zero(3)), sec(e(3, 2), zero(3))), Section<R>::zero(3));
}

TEST(Axioms, NonClosedTwistBreaksLeibniz) {
  auto probe = non_closed_probe();
  EXPECT_EQ(probe.algebra().d(probe.twist()), -f(5, {1, 2, 4, 5}));
  auto r = check_axioms(probe);
  EXPECT_FALSE(r.at("C1 Leibniz").passed);
  EXPECT_FALSE(r.at("C1 Leibniz").detail.empty());
  EXPECT_TRUE(r.at("C2 anchor").passed);
  EXPECT_TRUE(r.at("C4 pairing").passed);
  EXPECT_THROW(CourantModel(probe.algebra(), probe.twist()), GcredError);
}

TEST(Axioms, ConstructionRejectsNonLie) {
  EXPECT_THROW(CourantModel(jacobi_violator(), Form<R>(3, 3)), GcredError);
  EXPECT_THROW(CourantModel(heisenberg3(), f(3, {1, 2})), GcredError);
}

TEST(BTransform, Examples) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  auto t = b_transform(m, f(2, {1, 2}));
  EXPECT_EQ(t.apply(sec(e(2, 1), e(2, 2))), sec(e(2, 1), zero(2)));
  EXPECT_EQ(t.matrix * sec(e(2, 1), e(2, 2)).coordinates(), sec(e(2, 1), zero(2)).coordinates());
  CourantModel h(heisenberg3_r(), Form<R>(4, 3));
  auto closed = b_transform(h, f(4, {1, 2}));
  EXPECT_EQ(closed.target.twist(), h.twist());
}

TEST(BTransform, OrthogonalIntertwinerAndComposition) {
  std::mt19937 rng(4);
  for (const auto& m : courant_models()) {
    const std::size_t n = m.dim();
    auto b1 = random_form(rng, n, 2);
    auto b2 = random_form(rng, n, 2);
    auto t1 = b_transform(m, b1);
    EXPECT_EQ(t1.target.twist(), m.twist() + m.algebra().d(b1));
    for (int trial = 0; trial < 5; ++trial) {
      auto a = random_section(rng, n);
      auto b = random_section(rng, n);
      EXPECT_EQ(m.pairing(t1.apply(a), t1.apply(b)), m.pairing(a, b));
      EXPECT_EQ(t1.apply(m.bracket(a, b)), t1.target.bracket(t1.apply(a), t1.apply(b)));
    }
    auto t12 = b_transform(t1.target, b2);
    auto direct = b_transform(m, b1 + b2);
    EXPECT_EQ(t12.target.twist(), direct.target.twist());
    EXPECT_EQ(t12.matrix * t1.matrix, direct.matrix);
    auto a = random_section(rng, n);
    EXPECT_EQ(t12.apply(t1.apply(a)), direct.apply(a));
    EXPECT_EQ(splitting_curvature(m, b1 + b2), m.twist() + m.algebra().d(b1 + b2));
  }
}

TEST(SplittingCurvature, Examples) {
  for (const auto& m : courant_models()) EXPECT_EQ(splitting_curvature(m, Form<R>(m.dim(), 2)), m.twist());
  CourantModel flat3(LieAlgebra::abelian(3), Form<R>(3, 3));
  EXPECT_TRUE(splitting_curvature(flat3, f(3, {1, 2})).is_zero_form());
  CourantModel h(heisenberg3_r(), Form<R>(4, 3));
  EXPECT_EQ(splitting_curvature(h, f(4, {3, 4})), -f(4, {1, 2, 4}));
  EXPECT_EQ(curvature_oracle(h, f(4, {3, 4})), -f(4, {1, 2, 4}));
}

TEST(SplittingCurvature, MatchesBracketOracle) {
  std::mt19937 rng(5);
  for (const auto& m : courant_models()) {
    auto beta = random_form(rng, m.dim(), 2);
    EXPECT_EQ(splitting_curvature(m, beta), curvature_oracle(m, beta));
    EXPECT_EQ(splitting_curvature(m, beta.to_matrix()), curvature_oracle(m, beta));
  }
}

TEST(SplittingCurvature, RejectsNonIsotropic) {
  CourantModel m(LieAlgebra::abelian(2), Form<R>(2, 3));
  EXPECT_THROW(splitting_curvature(m, Matrix<R>::identity(2)), GcredError);
}

TEST(Section, Rendering) {
  std::size_t n = 3;
  Section<R> s{e(n, 1), scale(make_rational(-1, 2), e(n, 3))};
  EXPECT_EQ(to_string(s), "e1 - 1/2 f3");
  EXPECT_EQ(to_string(Section<R>::zero(2)), "0");
  EXPECT_EQ(basis_label(3, 4), "f2");
}
