#include "gcred/metric.hpp"

namespace gcred {

MinorCertificate leading_minors(const Matrix<Rational>& g) {
  if (g.rows() != g.cols()) throw GcredError("metric matrix is not square");
  MinorCertificate cert;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    Rational minor = determinant(g.select(idx, idx));
    cert.minors.push_back(minor);
    if (cert.positive && sgn(minor) <= 0) {
      cert.positive = false;
      cert.failing = k;
    }
  }
  return cert;
}

GeneralizedMetric GeneralizedMetric::from_gb(const Matrix<Rational>& g, const Form<Rational>& b) {
  const std::size_t n = g.rows();
  if (g.cols() != n || !g.is_symmetric()) throw GcredError("metric g is not a symmetric matrix");
  if (b.dim() != n || b.degree() != 2) throw GcredError("b must be a 2-form of matching dimension");
  auto cert = leading_minors(g);
  if (!cert.positive) {
    throw GcredError("metric g is not positive definite: leading minor of order " + std::to_string(cert.failing) +
                     " is " + to_string(cert.minors[cert.failing - 1]));
  }
  GeneralizedMetric m;
  m.g_ = g;
  m.b_ = b;
  Matrix<Rational> bm = b.to_matrix();
  m.lift_plus_ = Matrix<Rational>(2 * n, n);
  m.lift_minus_ = Matrix<Rational>(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.lift_plus_(i, i) = 1;
    m.lift_minus_(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) {
      m.lift_plus_(n + j, i) = g(j, i) - bm(j, i);
      m.lift_minus_(n + j, i) = -g(j, i) - bm(j, i);
    }
  }
  m.op_ = m.transport(Matrix<Rational>::identity(n), -Matrix<Rational>::identity(n));
  return m;
}

Matrix<Rational> GeneralizedMetric::transport(const Matrix<Rational>& plus, const Matrix<Rational>& minus) const {
  const std::size_t n = dim();
  if (plus.rows() != n || plus.cols() != n || minus.rows() != n || minus.cols() != n) {
    throw GcredError("transported operators must be n x n");
  }
  Matrix<Rational> frame(2 * n, 2 * n);
  Matrix<Rational> block(2 * n, 2 * n);
  for (std::size_t r = 0; r < 2 * n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      frame(r, c) = lift_plus_(r, c);
      frame(r, n + c) = lift_minus_(r, c);
    }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      block(r, c) = plus(r, c);
      block(n + r, n + c) = minus(r, c);
    }
  auto inv = inverse(frame);
  if (!inv) throw InternalError("V+ and V- are not complementary");
  return frame * block * *inv;
}

GeneralizedMetric GeneralizedMetric::from_v_plus(const Subspace<Rational>& v_plus) {
  const std::size_t n = v_plus.ambient_dim() / 2;
  if (v_plus.ambient_dim() != 2 * n || v_plus.dim() != n) throw GcredError("V+ must have half the ambient dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (v_plus.pivots()[i] != i) throw GcredError("V+ is not a graph over the tangent part");
  }
  Matrix<Rational> m(n, n);  // m(j, i) = form part of the lift of e_i, at f_j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, i) = v_plus.basis()[i][n + j];
  Matrix<Rational> mt = m.transpose();
  Rational half = make_rational(1, 2);
  Matrix<Rational> g = half * (m + mt);
  Matrix<Rational> bm = half * (mt - m);
  return from_gb(g, Form<Rational>::from_matrix(bm));
}

GeneralizedMetric GeneralizedMetric::from_operator(const Matrix<Rational>& op) {
  const std::size_t m = op.rows();
  if (op.cols() != m || m % 2 != 0) throw GcredError("generalized metric operator must be 2n x 2n");
  const std::size_t n = m / 2;
  if (op * op != Matrix<Rational>::identity(m)) throw GcredError("generalized metric operator does not square to 1");
  Matrix<Rational> p(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, n + i) = make_rational(1, 2);
    p(n + i, i) = make_rational(1, 2);
  }
  if (op.transpose() * p * op != p) throw GcredError("generalized metric operator is not orthogonal");
  if (!(p * op).is_symmetric()) throw GcredError("generalized metric operator is not self-adjoint");
  auto plus = Subspace<Rational>::span(kernel(op - Matrix<Rational>::identity(m)), m);
  GeneralizedMetric out = from_v_plus(plus);
  if (out.op_ != op) throw InternalError("generalized metric reconstruction does not reproduce the operator");
  return out;
}

MetricPair gb_from_metric(const GeneralizedMetric& metric) {
  const std::size_t m = metric.op().rows();
  auto plus = Subspace<Rational>::span(kernel(metric.op() - Matrix<Rational>::identity(m)), m);
  auto rebuilt = GeneralizedMetric::from_v_plus(plus);
  return {rebuilt.g(), rebuilt.b()};
}

MetricSplitting metric_splitting(const CourantModel& model, const GeneralizedMetric& metric) {
  if (metric.dim() != model.dim()) throw GcredError("metric dimension does not match the model");
  MetricSplitting out{b_transform(model, metric.b()), splitting_curvature(model, metric.b())};
  const std::size_t n = model.dim();
  Matrix<Rational> image = out.transform.matrix * metric.lift_plus_matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (image(n + j, i) != metric.g()(j, i)) throw InternalError("metric splitting does not straighten V+");
  return out;
}

Rational metric_norm(const CourantModel& model, const GeneralizedMetric& metric, const Vec<Rational>& u) {
  return dot(metric.op() * u, model.pairing_matrix() * u);
}

}  // namespace gcred
