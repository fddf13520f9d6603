#include "gcred/action.hpp"

namespace gcred {

CourantAlgebra::CourantAlgebra(LieAlgebra g, std::size_t h_dim, std::vector<Matrix<Rational>> module)
    : g_(std::move(g)), h_dim_(h_dim), module_(std::move(module)) {
  if (!check_jacobi(g_).empty()) throw GcredError("Courant algebra: g violates the Jacobi identity");
  if (module_.size() != g_.dim()) throw GcredError("Courant algebra: need one module matrix per basis element of g");
  for (const auto& m : module_) {
    if (m.rows() != h_dim_ || m.cols() != h_dim_) throw GcredError("Courant algebra: module matrix has wrong size");
  }
  for (std::size_t i = 0; i < g_.dim(); ++i)
    for (std::size_t j = i + 1; j < g_.dim(); ++j) {
      Matrix<Rational> lhs = rho(g_.bracket(unit_vec<Rational>(g_.dim(), i), unit_vec<Rational>(g_.dim(), j)));
      Matrix<Rational> rhs = module_[i] * module_[j] - module_[j] * module_[i];
      if (lhs != rhs) {
        throw GcredError("Courant algebra: module is not a representation at (a" + std::to_string(i + 1) + ", a" +
                         std::to_string(j + 1) + ")");
      }
    }
}

CourantAlgebra CourantAlgebra::trivial(LieAlgebra g, std::size_t h_dim) {
  std::vector<Matrix<Rational>> module(g.dim(), Matrix<Rational>(h_dim, h_dim));
  return CourantAlgebra(std::move(g), h_dim, std::move(module));
}

Matrix<Rational> CourantAlgebra::rho(const Vec<Rational>& gamma) const {
  if (gamma.size() != g_.dim()) throw std::invalid_argument("rho: wrong length");
  Matrix<Rational> out(h_dim_, h_dim_);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (!is_zero(gamma[i])) out = out + gamma[i] * module_[i];
  return out;
}

AlgebraElement CourantAlgebra::basis(std::size_t a) const {
  if (a >= dim()) throw std::out_of_range("Courant algebra basis index");
  AlgebraElement out{zero_vec<Rational>(g_dim()), zero_vec<Rational>(h_dim_)};
  if (a < g_dim()) {
    out.gamma[a] = 1;
  } else {
    out.lambda[a - g_dim()] = 1;
  }
  return out;
}

std::string CourantAlgebra::label(std::size_t a) const {
  return a < g_dim() ? "a" + std::to_string(a + 1) : "l" + std::to_string(a - g_dim() + 1);
}

AlgebraElement hemi_bracket(const CourantAlgebra& algebra, const AlgebraElement& a, const AlgebraElement& b) {
  return {algebra.g().bracket(a.gamma, b.gamma), algebra.rho(a.gamma) * b.lambda};
}

ValidationReport check_courant_algebra(const CourantAlgebra& algebra) {
  const std::size_t m = algebra.dim();
  auto add_el = [](const AlgebraElement& x, const AlgebraElement& y) {
    return AlgebraElement{add(x.gamma, y.gamma), add(x.lambda, y.lambda)};
  };
  std::string leibniz, anchor, exact;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto x = algebra.basis(a);
      auto y = algebra.basis(b);
      auto xy = hemi_bracket(algebra, x, y);
      if (anchor.empty() && xy.gamma != algebra.g().bracket(x.gamma, y.gamma)) {
        anchor = "(" + algebra.label(a) + ", " + algebra.label(b) + ")";
      }
      if (exact.empty() && a >= algebra.g_dim() && b >= algebra.g_dim() &&
          !(is_zero_vec(xy.gamma) && is_zero_vec(xy.lambda))) {
        exact = "(" + algebra.label(a) + ", " + algebra.label(b) + ")";
      }
      for (std::size_t c = 0; c < m && leibniz.empty(); ++c) {
        auto z = algebra.basis(c);
        auto lhs = hemi_bracket(algebra, x, hemi_bracket(algebra, y, z));
        auto rhs = add_el(hemi_bracket(algebra, xy, z), hemi_bracket(algebra, y, hemi_bracket(algebra, x, z)));
        if (!(lhs == rhs)) leibniz = "(" + algebra.label(a) + ", " + algebra.label(b) + ", " + algebra.label(c) + ")";
      }
    }
  ValidationReport r;
  r.add("c1 Leibniz", leibniz.empty(), leibniz);
  r.add("c2 anchor", anchor.empty(), anchor);
  r.add("exactness", exact.empty(), exact);
  return r;
}

ExtendedAction::ExtendedAction(CourantModel model, CourantAlgebra algebra, std::vector<Section<Rational>> g_images,
                               std::vector<Vec<Rational>> h_forms)
    : model_(std::move(model)),
      algebra_(std::move(algebra)),
      g_images_(std::move(g_images)),
      h_forms_(std::move(h_forms)) {
  const std::size_t n = model_.dim();
  if (g_images_.size() != algebra_.g_dim()) throw GcredError("extended action: need one image per basis element of g");
  if (h_forms_.size() != algebra_.h_dim()) throw GcredError("extended action: need one form per basis element of h");
  for (const auto& s : g_images_)
    if (s.x.size() != n || s.xi.size() != n) throw GcredError("extended action: image has wrong dimension");
  for (const auto& v : h_forms_)
    if (v.size() != n) throw GcredError("extended action: form has wrong dimension");
}

Section<Rational> ExtendedAction::psi(const AlgebraElement& a) const {
  const std::size_t n = model_.dim();
  auto out = Section<Rational>::zero(n);
  for (std::size_t i = 0; i < a.gamma.size(); ++i) {
    if (is_zero(a.gamma[i])) continue;
    out.x = add(out.x, scale(a.gamma[i], g_images_[i].x));
    out.xi = add(out.xi, scale(a.gamma[i], g_images_[i].xi));
  }
  for (std::size_t l = 0; l < a.lambda.size(); ++l)
    if (!is_zero(a.lambda[l])) out.xi = add(out.xi, scale(a.lambda[l], h_forms_[l]));
  return out;
}

std::vector<Section<Rational>> ExtendedAction::images() const {
  std::vector<Section<Rational>> out(g_images_);
  for (const auto& v : h_forms_) out.push_back({zero_vec<Rational>(model_.dim()), v});
  return out;
}

Matrix<Rational> ExtendedAction::generator_matrix() const {
  std::vector<Vec<Rational>> cols;
  for (const auto& s : g_images_) cols.push_back(s.x);
  return Matrix<Rational>::from_columns(cols, model_.dim());
}

ValidationReport validate_action(const ExtendedAction& action) {
  const auto& model = action.model();
  const auto& alg = action.algebra();
  const auto& L = model.algebra();
  std::string closed, morphism, preserved;
  for (std::size_t l = 0; l < alg.h_dim() && closed.empty(); ++l) {
    auto d = L.d(Form<Rational>::covector(action.h_forms()[l]));
    if (!d.is_zero_form()) closed = alg.label(alg.g_dim() + l) + ": d Psi = " + to_string(d);
  }
  auto images = action.images();
  for (std::size_t a = 0; a < alg.dim() && morphism.empty(); ++a)
    for (std::size_t b = 0; b < alg.dim() && morphism.empty(); ++b) {
      auto lhs = model.bracket(images[a], images[b]);
      auto rhs = action.psi(hemi_bracket(alg, alg.basis(a), alg.basis(b)));
      if (lhs != rhs) {
        morphism = "(" + alg.label(a) + ", " + alg.label(b) + "): [[Psi a, Psi b]] - Psi[[a, b]] = " +
                   to_string(Section<Rational>::from_coordinates(sub(lhs.coordinates(), rhs.coordinates())));
      }
    }
  for (std::size_t a = 0; a < alg.dim() && preserved.empty(); ++a) {
    auto ixh = interior(images[a].x, model.twist());
    auto dxi = L.d(images[a].xi_form());
    if (ixh != dxi) preserved = alg.label(a) + ": i_X H - d xi = " + to_string(ixh - dxi);
  }
  ValidationReport r;
  r.add("closed h-forms", closed.empty(), closed);
  r.add("bracket morphism", morphism.empty(), morphism);
  r.add("splitting preserved", preserved.empty(), preserved);
  return r;
}

Check check_free(const ExtendedAction& action) {
  std::size_t k = action.algebra().g_dim();
  std::size_t r = k == 0 ? 0 : rank(action.generator_matrix());
  return {"free action", r == k, r == k ? "" : "generators span dimension " + std::to_string(r) + " < " + std::to_string(k)};
}

KSpaces k_spaces(const ExtendedAction& action) {
  const auto& model = action.model();
  std::vector<Vec<Rational>> coords;
  for (const auto& s : action.images()) coords.push_back(s.coordinates());
  KSpaces out;
  out.k = Subspace<Rational>::span(coords, model.section_dim());
  out.k_perp = perp_wrt(out.k, model.pairing_matrix());
  out.k_meet = meet(out.k, out.k_perp);
  return out;
}

IsotropyResult is_isotropic(const ExtendedAction& action) {
  auto images = action.images();
  const auto& alg = action.algebra();
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a; b < images.size(); ++b) {
      Rational p = action.model().pairing(images[a], images[b]);
      if (!is_zero(p)) return {false, "<" + alg.label(a) + ", " + alg.label(b) + "> = " + to_string(p)};
    }
  return {};
}

Subspace<Rational> k_metric_complement(const ExtendedAction& action, const GeneralizedMetric& metric) {
  auto iso = is_isotropic(action);
  if (!iso.isotropic) throw GcredError("K is not isotropic: " + iso.witness);
  if (metric.dim() != action.model().dim()) throw GcredError("metric dimension does not match the model");
  auto ks = k_spaces(action);
  return meet(ks.k_perp, ks.k_perp.image(metric.op()));
}

Matrix<Rational> adjoint_matrix(const ExtendedAction& action, std::size_t basis_index) {
  return action.model().left_bracket_matrix(action.images().at(basis_index));
}

Check check_preserves_operator(const ExtendedAction& action, const Matrix<Rational>& op, const std::string& name) {
  const auto& alg = action.algebra();
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    auto ad = adjoint_matrix(action, a);
    if (ad * op != op * ad) return {"preserves " + name, false, alg.label(a) + " does not commute with " + name};
  }
  return {"preserves " + name, true, ""};
}

Check check_preserves_tangent_operator(const ExtendedAction& action, const Matrix<Rational>& op,
                                       const std::string& name) {
  const auto& alg = action.algebra();
  const auto& L = action.model().algebra();
  for (std::size_t a = 0; a < alg.g_dim(); ++a) {
    auto ad = L.ad(action.g_images()[a].x);
    if (ad * op != op * ad) return {"preserves " + name, false, alg.label(a) + ": [ad X, " + name + "] != 0"};
  }
  return {"preserves " + name, true, ""};
}

}  // namespace gcred
