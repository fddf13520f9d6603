#pragma once

// Generalized metrics on m + m*: V+ = {X + g(X) + i_X b}, V- = {X - g(X) + i_X b}, and the
// operator G = +1 on V+, -1 on V-.

#include <cstddef>
#include <vector>

#include "gcred/courant.hpp"
#include "gcred/form.hpp"
#include "gcred/matrix.hpp"
#include "gcred/subspace.hpp"

namespace gcred {

struct MinorCertificate {
  std::vector<Rational> minors;  // leading principal minors, orders 1..n
  bool positive = true;
  std::size_t failing = 0;  // order of the first non-positive minor, when !positive
};

MinorCertificate leading_minors(const Matrix<Rational>& g);

class GeneralizedMetric {
 public:
  GeneralizedMetric() = default;

  /// Throws GcredError unless g is symmetric positive definite.
  static GeneralizedMetric from_gb(const Matrix<Rational>& g, const Form<Rational>& b);

  /// From the operator; checks G^2 = 1, orthogonality, self-adjointness and positivity.
  static GeneralizedMetric from_operator(const Matrix<Rational>& op);

  /// From a maximal positive subspace that is a graph over m.
  static GeneralizedMetric from_v_plus(const Subspace<Rational>& v_plus);

  std::size_t dim() const { return g_.rows(); }
  const Matrix<Rational>& g() const { return g_; }
  const Form<Rational>& b() const { return b_; }
  const Matrix<Rational>& op() const { return op_; }

  /// 2n x n matrices whose columns are the lifts of e_1..e_n to V+ (resp. V-).
  const Matrix<Rational>& lift_plus_matrix() const { return lift_plus_; }
  const Matrix<Rational>& lift_minus_matrix() const { return lift_minus_; }
  Vec<Rational> lift_plus(const Vec<Rational>& x) const { return lift_plus_ * x; }
  Vec<Rational> lift_minus(const Vec<Rational>& x) const { return lift_minus_ * x; }

  Subspace<Rational> v_plus() const { return Subspace<Rational>::column_space(lift_plus_); }
  Subspace<Rational> v_minus() const { return Subspace<Rational>::column_space(lift_minus_); }

  /// The operator acting on V+ by `plus` and on V- by `minus`, each transported from m along pi.
  Matrix<Rational> transport(const Matrix<Rational>& plus, const Matrix<Rational>& minus) const;

  bool operator==(const GeneralizedMetric& o) const { return g_ == o.g_ && b_ == o.b_; }

 private:
  Matrix<Rational> g_;
  Form<Rational> b_;
  Matrix<Rational> op_;
  Matrix<Rational> lift_plus_;
  Matrix<Rational> lift_minus_;
};

struct MetricPair {
  Matrix<Rational> g;
  Form<Rational> b;
};

/// Recovers (g, b) from the +1-eigenspace of the operator.
MetricPair gb_from_metric(const GeneralizedMetric& metric);

struct MetricSplitting {
  BTransform transform;  // B = b, so that V+ becomes the graph of g
  Form<Rational> curvature;  // H + db
};

MetricSplitting metric_splitting(const CourantModel& model, const GeneralizedMetric& metric);

/// <Gu, u> for a section coordinate vector.
Rational metric_norm(const CourantModel& model, const GeneralizedMetric& metric, const Vec<Rational>& u);

}  // namespace gcred
