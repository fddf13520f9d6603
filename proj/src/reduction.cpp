#include "gcred/reduction.hpp"

namespace gcred {

namespace {

Subspace<Rational> tangent_projection(const Subspace<Rational>& s, std::size_t n) {
  Matrix<Rational> pi(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) pi(i, i) = 1;
  return s.image(pi);
}

std::string label_of(const ExtendedAction& a, std::size_t i) { return a.algebra().label(i); }

}  // namespace

Restriction restrict_action(const ExtendedAction& action) {
  const auto& model = action.model();
  const std::size_t n = model.dim();
  auto forms = Subspace<Rational>::span(action.h_forms(), n);
  Restriction r;
  r.p = annihilator(forms);
  for (std::size_t i = 0; i < action.g_images().size(); ++i) {
    if (!r.p.contains(action.g_images()[i].x)) {
      throw GcredError("generator " + label_of(action, i) + " is not tangent to Ann(Psi(h)): X = " +
                       to_string(action.g_images()[i].x));
    }
  }
  r.inclusion = r.p.basis_matrix();
  const std::size_t pd = r.p.dim();
  if (pd == 0) throw GcredError("Ann(Psi(h)) is zero");
  r.left_inverse = left_inverse(r.inclusion);
  LieAlgebra sub;
  try {
    sub = subalgebra(model.algebra(), r.inclusion);
  } catch (const std::invalid_argument&) {
    throw InternalError("annihilator of closed forms is not a subalgebra");
  }
  r.model = CourantModel(sub, pullback(model.twist(), r.inclusion));
  std::vector<Section<Rational>> images;
  for (const auto& s : action.g_images()) images.push_back({r.left_inverse * s.x, r.inclusion.transpose() * s.xi});
  r.action = ExtendedAction(r.model, CourantAlgebra::trivial(action.algebra().g(), 0), images, {});
  if (!validate_action(r.action).passed()) throw InternalError("restricted action is not an extended action");
  return r;
}

std::vector<Vec<Rational>> default_connection(const ExtendedAction& tangent_action, const Matrix<Rational>& g) {
  const std::size_t k = tangent_action.g_images().size();
  Matrix<Rational> x = tangent_action.generator_matrix();
  Matrix<Rational> gram = x.transpose() * g * x;
  auto inv = inverse(gram);
  if (!inv) throw GcredError("generators are degenerate for the metric; no default connection");
  Matrix<Rational> theta = *inv * x.transpose() * g;  // rows are theta_i
  std::vector<Vec<Rational>> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(theta.row(i));
  return out;
}

Form<Rational> straighten(const ExtendedAction& action, const std::vector<Vec<Rational>>& theta) {
  const std::size_t n = action.model().dim();
  const auto& gens = action.g_images();
  const std::size_t k = gens.size();
  if (theta.size() != k) throw GcredError("connection needs one 1-form per generator");
  for (std::size_t i = 0; i < k; ++i) {
    if (theta[i].size() != n) throw GcredError("connection form has wrong dimension");
    for (std::size_t j = 0; j < k; ++j) {
      Rational v = dot(theta[i], gens[j].x);
      if (v != (i == j ? 1 : 0)) {
        throw GcredError("connection is not dual to the generators: theta" + std::to_string(i + 1) + "(X" +
                         std::to_string(j + 1) + ") = " + to_string(v));
      }
    }
  }
  Form<Rational> b(n, 2);
  std::vector<Form<Rational>> th;
  for (const auto& t : theta) th.push_back(Form<Rational>::covector(t));
  for (std::size_t i = 0; i < k; ++i) {
    b += wedge(th[i], gens[i].xi_form());
    for (std::size_t j = 0; j < k; ++j) {
      Rational c = make_rational(1, 2) * dot(gens[j].xi, gens[i].x);
      if (!is_zero(c)) b += c * wedge(th[i], th[j]);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto rest = sub(gens[i].xi, interior(gens[i].x, b).components());
    if (!is_zero_vec(rest)) {
      throw GcredError("straightening leaves a form part on generator " + label_of(action, i) + ": " +
                       to_string(rest) + " (action not isotropic)");
    }
  }
  return b;
}

QuotientReduction quotient_reduce(const CourantModel& model, const Matrix<Rational>& generators) {
  const std::size_t p = model.dim();
  const auto& L = model.algebra();
  const std::size_t k = generators.cols();
  auto span_x = Subspace<Rational>::column_space(generators);
  if (span_x.dim() != k) throw GcredError("quotient: generators are dependent");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto br = L.bracket(unit_vec<Rational>(p, i), generators.column(j));
      if (!span_x.contains(br)) {
        throw GcredError("psi(g) is not an ideal: [e" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) +
                         "] = " + to_string(br));
      }
    }
  QuotientReduction out;
  for (std::size_t j = 0; j < k; ++j) {
    auto x = generators.column(j);
    auto ixh = interior(x, model.twist());
    if (!ixh.is_zero_form()) throw GcredError("twist is not basic: i_X" + std::to_string(j + 1) + " H = " + to_string(ixh));
    auto lxh = L.lie_derivative(x, model.twist());
    if (!lxh.is_zero_form()) throw GcredError("twist is not basic: L_X" + std::to_string(j + 1) + " H = " + to_string(lxh));
  }
  out.report.add("twist basic", true);
  auto q = quotient(Subspace<Rational>::whole(p), span_x);
  const std::size_t r = q.dim();
  out.representatives = Matrix<Rational>::from_columns(q.representatives, p);
  out.vector_projection = q.projection;
  std::vector<BracketRelation> rels;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      auto v = q.project(L.bracket(q.representatives[a], q.representatives[b]));
      if (!is_zero_vec(v)) rels.push_back({a, b, v});
    }
  LieAlgebra reduced(r, rels);
  Form<Rational> h_red = pullback(model.twist(), out.representatives);
  if (!check_jacobi(reduced).empty()) throw InternalError("quotient algebra violates Jacobi");
  if (!reduced.d(h_red).is_zero_form()) throw InternalError("reduced twist is not closed");
  out.report.add("reduced twist closed", true);
  out.model = CourantModel(reduced, h_red);
  return out;
}

Vec<Rational> ReductionResult::lift(const Vec<Rational>& reduced) const {
  Matrix<Rational> basis = spaces.k_perp.basis_matrix();
  auto c = solve(projection * basis, reduced);
  if (!c) throw InternalError("reduced section has no lift in K-perp");
  return basis * *c;
}

Check exactness_check(const ExtendedAction& action) {
  auto ks = k_spaces(action);
  const std::size_t n = action.model().dim();
  auto lhs = meet(tangent_projection(ks.k, n), tangent_projection(ks.k_perp, n));
  auto rhs = tangent_projection(ks.k_meet, n);
  std::string detail = "dim pi(K) meet pi(K-perp) = " + std::to_string(lhs.dim()) +
                       ", dim pi(K meet K-perp) = " + std::to_string(rhs.dim());
  return {"exactness", lhs == rhs, detail};
}

ReductionResult reduce(const ExtendedAction& action, const ReduceOptions& options) {
  const auto& model = action.model();
  const std::size_t n = model.dim();
  ReductionResult res;
  auto valid = validate_action(action);
  for (const auto& c : valid.checks()) {
    if (!c.passed) throw GcredError("not an extended action preserving the splitting: " + c.name + ": " + c.detail);
  }
  res.report.append(valid);
  res.restriction = restrict_action(action);
  const auto& rest = res.restriction;
  res.report.add("generators tangent to Ann(Psi(h))", true, "dim p = " + std::to_string(rest.p.dim()));
  auto iso = is_isotropic(action);
  if (!iso.isotropic) throw GcredError("K is not isotropic: " + iso.witness);
  res.report.add("K isotropic", true);
  auto free = check_free(action);
  if (!free.passed) throw GcredError("action is not free: " + free.detail);
  res.report.add(free.name, true);
  res.spaces = k_spaces(action);

  if (options.connection) {
    for (const auto& t : *options.connection) {
      if (t.size() != n) throw GcredError("connection form has wrong dimension");
      res.connection.push_back(rest.inclusion.transpose() * t);
    }
  } else {
    Matrix<Rational> g = options.metric ? *options.metric : Matrix<Rational>::identity(n);
    res.connection = default_connection(rest.action, rest.inclusion.transpose() * g * rest.inclusion);
  }
  res.straightening_b = straighten(rest.action, res.connection);
  res.report.add("straightened generators tangent", true);
  const auto& Lp = rest.model.algebra();
  for (std::size_t i = 0; i < rest.action.g_images().size(); ++i) {
    auto lxb = Lp.lie_derivative(rest.action.g_images()[i].x, res.straightening_b);
    if (!lxb.is_zero_form()) {
      throw GcredError("connection is not invariant: L_" + label_of(action, i) + " B = " + to_string(lxb));
    }
  }
  auto transformed = b_transform(rest.model, res.straightening_b);
  res.straightened_twist = transformed.target.twist();
  for (const auto& s : rest.action.g_images()) {
    if (!is_zero_vec(transformed.apply(s).xi)) throw InternalError("B-transform does not straighten a generator");
  }

  auto qr = quotient_reduce(transformed.target, rest.action.generator_matrix());
  res.report.append(qr.report);
  res.representatives = qr.representatives;
  res.vector_projection = qr.vector_projection;
  res.reduced_model = qr.model;
  const std::size_t r = qr.model.dim();

  // Section projection K-perp -> reduced sections.
  Matrix<Rational> bm = res.straightening_b.to_matrix();
  Matrix<Rational> vec_part = qr.vector_projection * rest.left_inverse;                       // r x n
  Matrix<Rational> form_from_x = qr.representatives.transpose() * bm * rest.left_inverse;     // r x n
  Matrix<Rational> form_from_xi = qr.representatives.transpose() * rest.inclusion.transpose();  // r x n
  res.projection = Matrix<Rational>(2 * r, 2 * n);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      res.projection(a, c) = vec_part(a, c);
      res.projection(r + a, c) = form_from_x(a, c);
      res.projection(r + a, n + c) = form_from_xi(a, c);
    }

  auto image = res.spaces.k_perp.image(res.projection);
  bool kills = true;
  for (const auto& v : res.spaces.k_meet.basis()) kills = kills && is_zero_vec(res.projection * v);
  bool kernel_exact = kills && image.dim() + res.spaces.k_meet.dim() == res.spaces.k_perp.dim();
  res.report.add("projection kernel is K meet K-perp", kernel_exact,
                 "dim image " + std::to_string(image.dim()) + ", dim K meet K-perp " +
                     std::to_string(res.spaces.k_meet.dim()));
  res.report.add("projection onto reduced sections", image.dim() == 2 * r);
  bool dims = 2 * r == res.spaces.k_perp.dim() - res.spaces.k_meet.dim() && 2 * r == 2 * n - 2 * res.spaces.k.dim();
  res.report.add("reduced dimension", dims,
                 "2r = " + std::to_string(2 * r) + ", 2n - 2 dim K = " +
                     std::to_string(2 * n - 2 * res.spaces.k.dim()));
  res.report.add(exactness_check(action));
  return res;
}

ValidationReport reduced_bracket_oracle(const ExtendedAction& action, const ReductionResult& result, std::mt19937& rng,
                                        int trials) {
  const auto& model = action.model();
  const std::size_t r2 = 2 * result.reduced_dim();
  const auto& meet_basis = result.spaces.k_meet.basis();
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto perturbed = [&](const Vec<Rational>& v) {
    Vec<Rational> out = v;
    for (const auto& k : meet_basis) out = add(out, scale(Rational(coeff(rng)), k));
    return out;
  };
  std::size_t compared = 0;
  std::string closure, independence, agreement;
  std::vector<Vec<Rational>> lifts;
  for (std::size_t a = 0; a < r2; ++a) lifts.push_back(result.lift(unit_vec<Rational>(r2, a)));
  for (int t = 0; t < trials; ++t) {
    for (std::size_t a = 0; a < r2; ++a)
      for (std::size_t b = 0; b < r2; ++b) {
        auto u1 = perturbed(lifts[a]);
        auto v1 = perturbed(lifts[b]);
        auto u2 = perturbed(lifts[a]);
        auto v2 = perturbed(lifts[b]);
        auto br1 = model.bracket_coordinates(u1, v1);
        auto br2 = model.bracket_coordinates(u2, v2);
        if (closure.empty() && !(result.spaces.k_perp.contains(br1) && result.spaces.k_perp.contains(br2))) {
          closure = "bracket of lifts leaves K-perp at reduced pair (" + std::to_string(a + 1) + ", " +
                    std::to_string(b + 1) + ")";
        }
        auto p1 = result.projection * br1;
        auto p2 = result.projection * br2;
        if (independence.empty() && p1 != p2) {
          independence = "lift dependence at reduced pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ")";
        }
        auto expected = result.reduced_model.bracket_coordinates(unit_vec<Rational>(r2, a), unit_vec<Rational>(r2, b));
        if (agreement.empty() && p1 != expected) {
          agreement = "reduced pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + "): lifted " +
                      to_string(p1) + ", reduced model " + to_string(expected);
        }
        ++compared;
      }
  }
  std::string ok = std::to_string(compared) + " lifted pairs";
  ValidationReport rep;
  rep.add("lifted brackets stay in K-perp", closure.empty(), closure.empty() ? ok : closure);
  rep.add("lift independence", independence.empty(), independence.empty() ? ok : independence);
  rep.add("agrees with reduced bracket", agreement.empty(), agreement.empty() ? ok : agreement);
  return rep;
}

}  // namespace gcred
