#include "gcred/structures.hpp"

namespace gcred {

namespace {

using G = Gaussian;

std::string vec_label(const Vec<Rational>& x) { return to_string(Section<Rational>{x, zero_vec<Rational>(x.size())}); }

Matrix<Rational> tangent_projector(std::size_t n) {
  Matrix<Rational> pi(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) pi(i, i) = 1;
  return pi;
}

std::string side_suffix(Side side) { return side == Side::plus ? "+" : "-"; }

Subspace<Rational> kernel_of_rows(const std::vector<Vec<Rational>>& rows, std::size_t n) {
  if (rows.empty()) return Subspace<Rational>::whole(n);
  return Subspace<Rational>::span(kernel(Matrix<Rational>::from_rows(rows, n)), n);
}

/// Real operator with the given +i-eigenspace (and its conjugate as -i-eigenspace).
std::optional<Matrix<Rational>> operator_from_holomorphic(const Subspace<G>& t) {
  const std::size_t n = t.ambient_dim();
  if (2 * t.dim() != n) return std::nullopt;
  std::vector<Vec<G>> cols(t.basis());
  for (const auto& v : t.basis()) cols.push_back(conj_vec(v));
  Matrix<G> frame = Matrix<G>::from_columns(cols, n);
  auto inv = inverse(frame);
  if (!inv) return std::nullopt;
  Matrix<G> diag(n, n);
  for (std::size_t k = 0; k < n; ++k) diag(k, k) = k < t.dim() ? G::i() : -G::i();
  Matrix<G> out = frame * diag * *inv;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!is_real(out(r, c))) return std::nullopt;
  return real_matrix(out);
}

Subspace<G> eigenspace(const Matrix<Rational>& j) {
  const std::size_t m = j.rows();
  Matrix<G> shifted = convert_matrix<G>(j);
  for (std::size_t k = 0; k < m; ++k) shifted(k, k) -= G::i();
  return Subspace<G>::span(kernel(shifted), m);
}

/// First basis pair whose bracket leaves the subspace, if any.
std::optional<std::string> bracket_closure_witness(const CourantModel& model, const Subspace<G>& l) {
  const auto& basis = l.basis();
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto br = model.bracket_direct(Section<G>::from_coordinates(basis[a]), Section<G>::from_coordinates(basis[b]));
      if (!l.contains(br.coordinates())) {
        return "bracket of eigenvectors " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
               " leaves the eigenspace: " + to_string(br);
      }
    }
  return std::nullopt;
}

}  // namespace

std::string side_name(Side side) { return side == Side::plus ? "V+" : "V-"; }

Subspace<Gaussian> skt_eigenspace(const GeneralizedMetric& metric, const Matrix<Rational>& i, Side side) {
  const std::size_t n = metric.dim();
  Form<Rational> omega = kahler_form(metric.g(), i);
  Form<G> c = convert_form<G>(metric.b()) + (side == Side::plus ? -G::i() : G::i()) * convert_form<G>(omega);
  std::vector<Vec<G>> out;
  auto t = holomorphic_vectors(i);
  for (const auto& v : t.basis()) out.push_back(Section<G>{v, interior(v, c).components()}.coordinates());
  return Subspace<G>::span(out, 2 * n);
}

ValidationReport validate_skt(const CourantModel& model, const GeneralizedMetric& metric, const Matrix<Rational>& i,
                              Side side) {
  ValidationReport rep;
  const std::size_t n = model.dim();
  const std::string identity_name = side == Side::plus ? "d^c omega = -db - H" : "d^c omega = db + H";
  const std::vector<std::string> dependent = {"integrable", "eigenspace in " + side_name(side),
                                              "eigenspace bracket closed", "torsion condition", identity_name};
  if (metric.dim() != n || i.rows() != n || i.cols() != n) throw GcredError("SKT data has the wrong dimension");
  bool square = squares_to_minus_one(i);
  rep.add("I^2 = -1", square);
  bool orth = square && is_orthogonal_for(i, metric.g());
  rep.add("g-orthogonal", orth, orth || !square ? "" : "g(I., I.) != g");
  if (!square || !orth) {
    for (const auto& name : dependent) rep.add(name, false, "requires an orthogonal almost complex structure");
    return rep;
  }
  const auto& L = model.algebra();
  auto nij = nijenhuis_witness(L, i);
  rep.add("integrable", !nij, nij.value_or(""));

  auto l = skt_eigenspace(metric, i, side);
  auto v = convert_subspace<G>(side == Side::plus ? metric.v_plus() : metric.v_minus());
  rep.add("eigenspace in " + side_name(side), v.contains(l) && 2 * l.dim() == n);
  auto closure = bracket_closure_witness(model, l);
  rep.add("eigenspace bracket closed", !closure, closure.value_or(""));

  Form<Rational> omega = kahler_form(metric.g(), i);
  Form<G> c = convert_form<G>(metric.b()) + (side == Side::plus ? -G::i() : G::i()) * convert_form<G>(omega);
  Form<G> torsion = L.d(c) + convert_form<G>(model.twist());
  std::string lemma;
  auto hol = holomorphic_vectors(i).basis();
  for (std::size_t a = 0; a < hol.size() && lemma.empty(); ++a)
    for (std::size_t b = 0; b < hol.size() && lemma.empty(); ++b) {
      auto w = interior(hol[b], interior(hol[a], torsion));
      if (!w.is_zero_form()) {
        lemma = "i_Y i_X (dc + H) = " + to_string(w) + " for holomorphic vectors " + std::to_string(a + 1) + ", " +
                std::to_string(b + 1);
      }
    }
  rep.add("torsion condition", lemma.empty(), lemma);
  if (!closure.has_value() != (!nij.has_value() && lemma.empty())) {
    throw InternalError("eigenspace closure disagrees with integrability plus torsion condition");
  }

  if (nij) {
    rep.add(identity_name, false, "d^c requires an integrable structure");
  } else {
    Form<Rational> dc = dc_operator(L, i, omega);
    Form<Rational> target = model.twist() + L.d(metric.b());
    if (side == Side::plus) target = -target;
    rep.add(identity_name, dc == target, "d^c omega = " + to_string(dc) + ", expected " + to_string(target));
  }
  return rep;
}

MetricReduction reduce_metric(const ExtendedAction& action, const GeneralizedMetric& metric) {
  const auto& model = action.model();
  const std::size_t n = model.dim();
  if (metric.dim() != n) throw GcredError("metric dimension does not match the model");
  auto preserved = check_preserves_operator(action, metric.op(), "G");
  if (!preserved.passed) throw GcredError("metric not preserved: " + preserved.detail);

  MetricReduction mr;
  mr.metric = metric;
  ReduceOptions opts;
  opts.metric = metric.g();
  mr.base = reduce(action, opts);
  mr.report.add(preserved);
  const auto& rest = mr.base.restriction;
  const Matrix<Rational>& inc = rest.inclusion;
  const std::size_t p = inc.cols();
  const std::size_t k = action.g_images().size();
  const std::size_t r = mr.base.reduced_dim();

  Matrix<Rational> gp = inc.transpose() * metric.g() * inc;
  Form<Rational> bp = pullback(metric.b(), inc);
  Matrix<Rational> xp = rest.action.generator_matrix();
  std::vector<Vec<Rational>> xi;
  for (std::size_t c = 0; c < k; ++c) {
    xi.push_back(sub(rest.action.g_images()[c].xi, interior(xp.column(c), bp).components()));
  }
  mr.xi_metric = Matrix<Rational>::from_columns(xi, p);

  // tau+- = {Y in p : g(Y, X_c) = -+(b(Y, X_c) + xi_c(Y))}
  std::vector<Vec<Rational>> plus_rows, minus_rows;
  for (std::size_t c = 0; c < k; ++c) {
    Vec<Rational> gx = gp * xp.column(c);
    plus_rows.push_back(add(gx, xi[c]));
    minus_rows.push_back(sub(gx, xi[c]));
  }
  auto tau_plus_p = kernel_of_rows(plus_rows, p);
  auto tau_minus_p = kernel_of_rows(minus_rows, p);
  auto orbit = Subspace<Rational>::column_space(xp);
  for (Side side : {Side::plus, Side::minus}) {
    const auto& t = side == Side::plus ? tau_plus_p : tau_minus_p;
    if (t.dim() != p - k || meet(t, orbit).dim() != 0) {
      throw GcredError("tau" + side_suffix(side) + " is not transverse to the orbit directions");
    }
  }
  mr.tau_plus = tau_plus_p.image(inc);
  mr.tau_minus = tau_minus_p.image(inc);

  const auto& ks = mr.base.spaces;
  mr.v_plus_perp = meet(metric.v_plus(), ks.k_perp);
  mr.v_minus_perp = meet(metric.v_minus(), ks.k_perp);
  Matrix<Rational> pi = tangent_projector(n);
  mr.report.add("tau+ = pi(V+ meet K-perp)", mr.v_plus_perp.image(pi) == mr.tau_plus);
  mr.report.add("tau- = pi(V- meet K-perp)", mr.v_minus_perp.image(pi) == mr.tau_minus);
  bool maximal = mr.v_plus_perp.dim() + mr.v_minus_perp.dim() + ks.k.dim() == ks.k_perp.dim() &&
                 join(join(mr.v_plus_perp, mr.v_minus_perp), ks.k) == ks.k_perp;
  mr.report.add("maximality", maximal,
                std::to_string(mr.v_plus_perp.dim()) + " + " + std::to_string(mr.v_minus_perp.dim()) + " + " +
                    std::to_string(ks.k.dim()) + " = " + std::to_string(ks.k_perp.dim()));

  auto vp_red = mr.v_plus_perp.image(mr.base.projection);
  auto vm_red = mr.v_minus_perp.image(mr.base.projection);
  mr.reduced = GeneralizedMetric::from_v_plus(vp_red);
  mr.report.add("V-red = p(V- meet K-perp)", mr.reduced.v_minus() == vm_red);
  mr.report.add("V+red + V-red = E-red", vp_red.dim() + vm_red.dim() == 2 * r);

  // chi: [[G, Xi], [Xi, G]] (s; c) = -(g(rep, X_d); xi_d(rep))
  Matrix<Rational> gram = xp.transpose() * gp * xp;
  Matrix<Rational> xim(k, k);
  for (std::size_t d = 0; d < k; ++d)
    for (std::size_t c = 0; c < k; ++c) xim(d, c) = dot(xi[d], xp.column(c));
  Matrix<Rational> system(2 * k, 2 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      system(a, b) = gram(a, b);
      system(a, k + b) = xim(a, b);
      system(k + a, b) = xim(a, b);
      system(k + a, k + b) = gram(a, b);
    }
  auto sys_inv = inverse(system);
  if (!sys_inv) throw InternalError("the equations for chi are singular");
  const Matrix<Rational>& reps = mr.base.representatives;
  Matrix<Rational> yh(p, r), cmat(k, r);
  for (std::size_t a = 0; a < r; ++a) {
    Vec<Rational> rep = reps.column(a);
    Vec<Rational> rhs(2 * k);
    for (std::size_t d = 0; d < k; ++d) {
      rhs[d] = -dot(gp * rep, xp.column(d));
      rhs[k + d] = -dot(xi[d], rep);
    }
    Vec<Rational> sol = *sys_inv * rhs;
    Vec<Rational> s(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(k));
    Vec<Rational> c(sol.begin() + static_cast<std::ptrdiff_t>(k), sol.end());
    Vec<Rational> lift = add(rep, xp * s);
    for (std::size_t q = 0; q < p; ++q) yh(q, a) = lift[q];
    for (std::size_t q = 0; q < k; ++q) cmat(q, a) = c[q];
  }
  Matrix<Rational> chi_vectors = xp * cmat;  // p x r
  Matrix<Rational> tp = yh + chi_vectors;
  Matrix<Rational> tm = yh - chi_vectors;
  mr.report.add("tau+ = {Y^h + chi(Y)}", Subspace<Rational>::column_space(tp) == tau_plus_p);
  mr.report.add("tau- = {Y^h - chi(Y)}", Subspace<Rational>::column_space(tm) == tau_minus_p);

  auto dual_rows = [&](const Matrix<Rational>& horizontal) {
    std::vector<Vec<Rational>> cols = xp.columns();
    for (const auto& v : horizontal.columns()) cols.push_back(v);
    auto inv = inverse(Matrix<Rational>::from_columns(cols, p));
    if (!inv) throw InternalError("horizontal space is not complementary to the orbit directions");
    return *inv;
  };
  Matrix<Rational> w = dual_rows(yh);
  mr.theta = Matrix<Rational>(k, p);
  Matrix<Rational> eta(r, p);
  for (std::size_t q = 0; q < p; ++q) {
    for (std::size_t c = 0; c < k; ++c) mr.theta(c, q) = w(c, q);
    for (std::size_t a = 0; a < r; ++a) eta(a, q) = w(k + a, q);
  }
  mr.chi = cmat * eta;
  Matrix<Rational> wp = dual_rows(tp);
  Matrix<Rational> wm = dual_rows(tm);
  mr.theta_plus = Matrix<Rational>(k, p);
  mr.theta_minus = Matrix<Rational>(k, p);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t q = 0; q < p; ++q) {
      mr.theta_plus(c, q) = wp(c, q);
      mr.theta_minus(c, q) = wm(c, q);
    }
  mr.report.add("theta+ = theta - chi", mr.theta_plus == mr.theta - mr.chi);
  mr.report.add("theta- = theta + chi", mr.theta_minus == mr.theta + mr.chi);

  mr.tau_plus_lifts = inc * tp;
  mr.tau_minus_lifts = inc * tm;
  mr.horizontal_lifts = inc * yh;
  mr.report.add("g-red = g on tau+", tp.transpose() * gp * tp == mr.reduced.g());
  mr.report.add("g-red = g on tau-", tm.transpose() * gp * tm == mr.reduced.g());
  return mr;
}

ReducedCurvature reduced_metric_curvature(const ExtendedAction& action, const MetricReduction& mr) {
  const auto& rest = mr.base.restriction;
  const Matrix<Rational>& inc = rest.inclusion;
  const std::size_t k = action.g_images().size();
  const auto& Lp = rest.model.algebra();
  const auto& g = action.algebra().g();
  Form<Rational> h_ms = pullback(metric_splitting(action.model(), mr.metric).curvature, inc);
  Matrix<Rational> xp = rest.action.generator_matrix();

  std::vector<Section<Rational>> gens;
  for (std::size_t c = 0; c < k; ++c) gens.push_back({xp.column(c), mr.xi_metric.column(c)});
  CourantModel split_model(Lp, h_ms);
  ExtendedAction split_action(split_model, CourantAlgebra::trivial(g, 0), gens, {});
  std::vector<Vec<Rational>> theta_plus;
  for (std::size_t c = 0; c < k; ++c) theta_plus.push_back(mr.theta_plus.row(c));
  Form<Rational> b_plus = straighten(split_action, theta_plus);
  for (std::size_t c = 0; c < k; ++c) {
    if (!Lp.lie_derivative(xp.column(c), b_plus).is_zero_form()) throw InternalError("theta+ is not invariant");
  }
  auto qr = quotient_reduce(CourantModel(Lp, h_ms + Lp.d(b_plus)), xp);
  if (qr.representatives != mr.base.representatives) throw InternalError("quotient representatives differ");

  ReducedCurvature out;
  out.via_db = qr.model.twist();
  Form<Rational> up = h_ms;
  for (std::size_t c = 0; c < k; ++c) {
    Form<Rational> f = Lp.d(Form<Rational>::covector(theta_plus[c]));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        Rational coeff = make_rational(1, 2) * g.constant(c, a, b);
        if (!is_zero(coeff)) {
          f += coeff * wedge(Form<Rational>::covector(theta_plus[a]), Form<Rational>::covector(theta_plus[b]));
        }
      }
    up += wedge(f, Form<Rational>::covector(mr.xi_metric.column(c)));
  }
  Matrix<Rational> tp = left_inverse(inc) * mr.tau_plus_lifts;
  out.via_f = pullback(up, tp);
  out.via_splitting = metric_splitting(mr.base.reduced_model, mr.reduced).curvature;
  out.agree = out.via_db == out.via_f && out.via_f == out.via_splitting;
  if (!out.agree) {
    throw InternalError("reduced curvature routes disagree: H + dB -> " + to_string(out.via_db) + ", (H + <F, xi>)|tau+ -> " +
                        to_string(out.via_f) + ", reduced metric splitting -> " + to_string(out.via_splitting));
  }
  return out;
}

SKTReduction reduce_skt(const ExtendedAction& action, const GeneralizedMetric& metric, const Matrix<Rational>& i,
                        Side side) {
  return reduce_skt(action, reduce_metric(action, metric), i, side);
}

SKTReduction reduce_skt(const ExtendedAction& action, const MetricReduction& mr, const Matrix<Rational>& i, Side side) {
  const auto& model = action.model();
  const std::size_t n = model.dim();
  auto upstairs = validate_skt(model, mr.metric, i, side);
  for (const auto& c : upstairs.checks()) {
    if (!c.passed) throw GcredError("not an SKT structure on " + side_name(side) + ": " + c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  auto preserved = check_preserves_tangent_operator(action, i, "I");
  if (!preserved.passed) throw GcredError("complex structure not preserved: " + preserved.detail);

  SKTReduction out;
  out.metric = mr;
  out.report.append(mr.report);
  out.report.add(preserved);
  const auto& tau = mr.tau(side);
  const std::string tname = "tau" + side_suffix(side);
  std::string witness;
  for (const auto& v : tau.basis()) {
    auto iv = i * v;
    if (!tau.contains(iv)) {
      witness = "I(" + vec_label(v) + ") = " + vec_label(iv) + " is not in " + tname;
      break;
    }
  }
  out.criterion = {"I(" + tname + ") = " + tname, witness.empty(), witness};
  Matrix<Rational> structure = side == Side::plus ? mr.metric.transport(i, Matrix<Rational>::identity(n))
                                                  : mr.metric.transport(Matrix<Rational>::identity(n), i);
  const auto& vperp = mr.v_perp(side);
  bool generalized = vperp.image(structure) == vperp;
  if (generalized != out.criterion.passed) throw InternalError("I(" + tname + ") criterion disagrees with I(K-perp meet V)");
  out.report.add(out.criterion);
  if (!out.criterion.passed) return out;

  const auto& base = mr.base;
  const std::size_t r = base.reduced_dim();
  Matrix<Rational> down = base.vector_projection * base.restriction.left_inverse;  // r x n
  Matrix<Rational> real_route = down * i * mr.tau_lifts(side);

  auto l = skt_eigenspace(mr.metric, i, side);
  auto l_perp = meet(l, convert_subspace<G>(base.spaces.k_perp));
  auto l_red = l_perp.image(convert_matrix<G>(base.projection));
  auto v_red = convert_subspace<G>(side == Side::plus ? mr.reduced.v_plus() : mr.reduced.v_minus());
  bool splits = 2 * l_red.dim() == r && join(l_red, l_red.conj()) == v_red;
  out.report.add("L-red + conj(L-red) = " + side_name(side) + "-red", splits);
  auto t_red = l_red.image(convert_matrix<G>(tangent_projector(r)));
  auto complex_route = operator_from_holomorphic(t_red);
  bool routes = complex_route.has_value() && *complex_route == real_route;
  if (splits && !routes) throw InternalError("reduced complex structure differs between the complex and real routes");
  out.report.add("reduced I by complex and real routes", routes);
  out.reduced_i = real_route;
  out.report.append(validate_skt(base.reduced_model, mr.reduced, real_route, side), "reduced ");
  return out;
}

HKTReduction reduce_hkt(const ExtendedAction& action, const GeneralizedMetric& metric,
                        const std::array<Matrix<Rational>, 3>& s) {
  static const std::array<std::string, 3> names = {"I", "J", "K"};
  const std::size_t n = action.model().dim();
  const Matrix<Rational> minus_one = -Matrix<Rational>::identity(n);
  bool quaternion = s[0] * s[0] == minus_one && s[1] * s[1] == minus_one && s[0] * s[1] == s[2];
  if (!quaternion) throw GcredError("structures do not satisfy I^2 = J^2 = -1, IJ = K");
  HKTReduction out;
  out.report.add("quaternion relations", true);
  auto mr = reduce_metric(action, metric);
  bool all = true;
  for (std::size_t q = 0; q < 3; ++q) {
    SKTReduction part;
    try {
      part = reduce_skt(action, mr, s[q]);
    } catch (const GcredError& e) {
      throw GcredError(names[q] + ": " + e.what());
    }
    std::string detail = part.criterion.detail;
    if (detail.rfind("I(", 0) == 0) detail = names[q] + detail.substr(1);
    out.report.add({names[q] + " criterion", part.criterion.passed, detail});
    if (part.reduced_i) {
      ValidationReport sub;
      for (const auto& c : part.report.checks())
        if (c.name.rfind("reduced ", 0) == 0 || c.name.rfind("L-red", 0) == 0 || c.name.rfind("reduced I", 0) == 0)
          sub.add(c);
      out.report.append(sub, names[q] + " ");
    }
    all = all && part.criterion.passed;
    out.parts[q] = std::move(part);
  }
  if (all) {
    std::array<Matrix<Rational>, 3> red = {*out.parts[0]->reduced_i, *out.parts[1]->reduced_i, *out.parts[2]->reduced_i};
    const std::size_t r = red[0].rows();
    const Matrix<Rational> m1 = -Matrix<Rational>::identity(r);
    out.report.add("reduced quaternion relations",
                   red[0] * red[0] == m1 && red[1] * red[1] == m1 && red[2] * red[2] == m1 && red[0] * red[1] == red[2]);
    out.reduced = red;
  }
  return out;
}

GKStructure gk_from_bihermitian(const GeneralizedMetric& metric, const Matrix<Rational>& i_plus,
                                const Matrix<Rational>& i_minus) {
  return {metric.transport(i_plus, i_minus), metric.transport(i_plus, -i_minus)};
}

GKValidation validate_gk(const CourantModel& model, const GKStructure& gk) {
  GKValidation out;
  auto& rep = out.report;
  const std::size_t n = model.dim();
  const std::size_t m = 2 * n;
  const Matrix<Rational> p = model.pairing_matrix();
  const Matrix<Rational> one = Matrix<Rational>::identity(m);
  if (gk.j1.rows() != m || gk.j1.cols() != m || gk.j2.rows() != m || gk.j2.cols() != m) {
    throw GcredError("generalized complex structures must be 2n x 2n");
  }
  for (const auto& [name, j] : {std::pair<std::string, const Matrix<Rational>*>{"J1", &gk.j1}, {"J2", &gk.j2}}) {
    bool square = (*j) * (*j) == -one;
    rep.add(name + "^2 = -1", square);
    rep.add(name + " orthogonal", j->transpose() * p * (*j) == p);
    if (square) {
      auto w = bracket_closure_witness(model, eigenspace(*j));
      rep.add(name + " integrable", !w, w.value_or(""));
    } else {
      rep.add(name + " integrable", false, "requires " + name + "^2 = -1");
    }
  }
  rep.add("[J1, J2] = 0", gk.j1 * gk.j2 == gk.j2 * gk.j1);
  Matrix<Rational> op = -(gk.j1 * gk.j2);
  GeneralizedMetric metric;
  try {
    metric = GeneralizedMetric::from_operator(op);
    rep.add("-J1 J2 generalized metric", true);
  } catch (const GcredError& e) {
    rep.add("-J1 J2 generalized metric", false, e.what());
    return out;
  }
  Matrix<Rational> pi = tangent_projector(n);
  Matrix<Rational> i_plus = pi * gk.j1 * metric.lift_plus_matrix();
  Matrix<Rational> i_minus = pi * gk.j1 * metric.lift_minus_matrix();
  bool extracted = gk_from_bihermitian(metric, i_plus, i_minus).j1 == gk.j1 &&
                   gk_from_bihermitian(metric, i_plus, i_minus).j2 == gk.j2;
  rep.add("bihermitian extraction", extracted);
  if (!extracted) return out;
  rep.append(validate_skt(model, metric, i_plus, Side::plus), "I+ ");
  rep.append(validate_skt(model, metric, i_minus, Side::minus), "I- ");
  const auto& L = model.algebra();
  if (!nijenhuis_witness(L, i_plus) && !nijenhuis_witness(L, i_minus) && squares_to_minus_one(i_plus) &&
      squares_to_minus_one(i_minus) && is_orthogonal_for(i_plus, metric.g()) && is_orthogonal_for(i_minus, metric.g())) {
    auto dp = dc_operator(L, i_plus, kahler_form(metric.g(), i_plus));
    auto dm = dc_operator(L, i_minus, kahler_form(metric.g(), i_minus));
    auto target = model.twist() + L.d(metric.b());
    rep.add("d^c_- omega_- = -d^c_+ omega_+ = H + db", dm == target && -dp == target,
            "d^c_- omega_- = " + to_string(dm) + ", -d^c_+ omega_+ = " + to_string(-dp) + ", H + db = " + to_string(target));
  } else {
    rep.add("d^c_- omega_- = -d^c_+ omega_+ = H + db", false, "requires integrable orthogonal I+-");
  }
  out.data = Bihermitian{metric, i_plus, i_minus};
  return out;
}

GKReduction reduce_gk(const ExtendedAction& action, const GKStructure& gk) {
  const auto& model = action.model();
  auto upstairs = validate_gk(model, gk);
  for (const auto& c : upstairs.report.checks()) {
    if (!c.passed) throw GcredError("not a generalized Kahler structure: " + c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  for (const auto& [name, j] : {std::pair<std::string, const Matrix<Rational>*>{"J1", &gk.j1}, {"J2", &gk.j2}}) {
    auto c = check_preserves_operator(action, *j, name);
    if (!c.passed) throw GcredError(name + " not preserved: " + c.detail);
  }
  const auto& data = *upstairs.data;
  GKReduction out;
  out.metric = reduce_metric(action, data.metric);
  const auto& mr = *out.metric;
  out.report.append(mr.report);

  // K^G route.
  auto kg = k_metric_complement(action, data.metric);
  bool kg1 = kg.image(gk.j1) == kg;
  bool kg2 = kg.image(gk.j2) == kg;
  out.report.add("J1 K^G = K^G", kg1);
  out.report.add("J2 K^G = K^G", kg2);

  // tau+- route.
  auto plus = reduce_skt(action, mr, data.i_plus, Side::plus);
  auto minus = reduce_skt(action, mr, data.i_minus, Side::minus);
  out.report.add(plus.criterion);
  out.report.add(minus.criterion);
  bool tau_ok = plus.criterion.passed && minus.criterion.passed;
  if ((kg1 && kg2) != tau_ok) throw InternalError("K^G criterion disagrees with the tau+- criteria");
  if (!tau_ok) return out;

  Matrix<Rational> basis = kg.basis_matrix();
  auto pb_inv = inverse(mr.base.projection * basis);
  if (!pb_inv) throw InternalError("K^G does not map isomorphically onto the reduced algebroid");
  GKStructure via_kg{mr.base.projection * gk.j1 * basis * *pb_inv, mr.base.projection * gk.j2 * basis * *pb_inv};
  GKStructure via_tau = gk_from_bihermitian(mr.reduced, *plus.reduced_i, *minus.reduced_i);
  bool agree = via_kg.j1 == via_tau.j1 && via_kg.j2 == via_tau.j2;
  if (!agree) throw InternalError("K^G and tau+- reductions of the generalized Kahler structure differ");
  out.report.add("K^G and tau routes agree", agree);
  auto reduced = validate_gk(mr.base.reduced_model, via_kg);
  out.report.append(reduced.report, "reduced ");
  out.reduced = via_kg;
  out.reduced_data = reduced.data;
  return out;
}

}  // namespace gcred
