#include "gcred/courant.hpp"

namespace gcred {

std::string basis_label(std::size_t n, std::size_t a) {
  return (a < n ? "e" : "f") + std::to_string(a % n + 1);
}

CourantModel::CourantModel(LieAlgebra algebra, Form<Rational> twist)
    : algebra_(std::move(algebra)), twist_(std::move(twist)) {
  if (twist_.dim() != algebra_.dim() || twist_.degree() != 3) {
    throw GcredError("twist must be a 3-form on the algebra");
  }
  auto violations = check_jacobi(algebra_);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw GcredError("algebra violates Jacobi at (e" + std::to_string(v.i + 1) + ", e" + std::to_string(v.j + 1) +
                     ", e" + std::to_string(v.k + 1) + "): jacobiator " + to_string(v.jacobiator));
  }
  Form<Rational> dh = algebra_.d(twist_);
  if (!dh.is_zero_form()) throw GcredError("twist H is not closed: dH = " + to_string(dh));
  build_table();
}

CourantModel CourantModel::unchecked(LieAlgebra algebra, Form<Rational> twist) {
  CourantModel m;
  if (twist.dim() != algebra.dim() || twist.degree() != 3) throw GcredError("twist must be a 3-form on the algebra");
  m.algebra_ = std::move(algebra);
  m.twist_ = std::move(twist);
  m.build_table();
  return m;
}

void CourantModel::build_table() {
  const std::size_t m = section_dim();
  table_.assign(m * m, {});
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto ua = Section<Rational>::from_coordinates(unit_vec<Rational>(m, a));
      auto ub = Section<Rational>::from_coordinates(unit_vec<Rational>(m, b));
      auto v = bracket_direct(ua, ub).coordinates();
      if (!is_zero_vec(v)) table_[a * m + b] = std::move(v);
    }
}

Matrix<Rational> CourantModel::pairing_matrix() const {
  const std::size_t n = dim();
  Matrix<Rational> p(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, n + i) = make_rational(1, 2);
    p(n + i, i) = make_rational(1, 2);
  }
  return p;
}

Matrix<Rational> CourantModel::left_bracket_matrix(const Section<Rational>& s) const {
  const std::size_t m = section_dim();
  auto u = s.coordinates();
  std::vector<Vec<Rational>> cols;
  for (std::size_t b = 0; b < m; ++b) cols.push_back(bracket_coordinates(u, unit_vec<Rational>(m, b)));
  return Matrix<Rational>::from_columns(cols, m);
}

Matrix<Rational> CourantModel::right_bracket_matrix(const Section<Rational>& s) const {
  const std::size_t m = section_dim();
  auto u = s.coordinates();
  std::vector<Vec<Rational>> cols;
  for (std::size_t b = 0; b < m; ++b) cols.push_back(bracket_coordinates(unit_vec<Rational>(m, b), u));
  return Matrix<Rational>::from_columns(cols, m);
}

namespace {

std::string triple_label(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  return "(" + basis_label(n, a) + ", " + basis_label(n, b) + ", " + basis_label(n, c) + ")";
}

}  // namespace

ValidationReport check_axioms(const CourantModel& model) {
  const std::size_t n = model.dim();
  const std::size_t m = model.section_dim();
  std::vector<Vec<Rational>> unit;
  for (std::size_t a = 0; a < m; ++a) unit.push_back(unit_vec<Rational>(m, a));
  std::vector<Vec<Rational>> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = model.bracket_coordinates(unit[a], unit[b]);
  const Matrix<Rational> p = model.pairing_matrix();
  auto pair = [&](const Vec<Rational>& u, const Vec<Rational>& v) { return dot(u, p * v); };

  std::string c1, c2, c3, c4, c5;
  std::size_t count = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& ab = table[a * m + b];
      if (c2.empty()) {
        Vec<Rational> anchor(ab.begin(), ab.begin() + static_cast<std::ptrdiff_t>(n));
        auto xa = Section<Rational>::from_coordinates(unit[a]).x;
        auto xb = Section<Rational>::from_coordinates(unit[b]).x;
        if (anchor != model.algebra().bracket(xa, xb)) c2 = "(" + basis_label(n, a) + ", " + basis_label(n, b) + ")";
      }
      if (c3.empty()) {
        auto ua = Section<Rational>::from_coordinates(unit[a]);
        auto ub = Section<Rational>::from_coordinates(scale(Rational(3), unit[b]));
        if (model.bracket_direct(ua, ub).coordinates() != scale(Rational(3), ab)) {
          c3 = "(" + basis_label(n, a) + ", 3 " + basis_label(n, b) + ")";
        }
      }
      if (c5.empty() && !is_zero_vec(add(ab, table[b * m + a]))) {
        c5 = "(" + basis_label(n, a) + ", " + basis_label(n, b) + "): [[a,b]] + [[b,a]] = " +
             to_string(Section<Rational>::from_coordinates(add(ab, table[b * m + a])));
      }
      for (std::size_t c = 0; c < m; ++c) {
        ++count;
        if (c1.empty()) {
          auto lhs = model.bracket_coordinates(unit[a], table[b * m + c]);
          auto rhs = add(model.bracket_coordinates(ab, unit[c]), model.bracket_coordinates(unit[b], table[a * m + c]));
          if (lhs != rhs) {
            c1 = triple_label(n, a, b, c) + ": defect " + to_string(Section<Rational>::from_coordinates(sub(lhs, rhs)));
          }
        }
        if (c4.empty()) {
          Rational defect = pair(ab, unit[c]) + pair(unit[b], table[a * m + c]);
          if (!is_zero(defect)) c4 = triple_label(n, a, b, c) + ": defect " + to_string(defect);
        }
      }
    }
  }
  std::string triples = "verified on " + std::to_string(count) + " basis triples";
  std::string pairs = "verified on " + std::to_string(m * m) + " basis pairs";
  ValidationReport report;
  report.add("C1 Leibniz", c1.empty(), c1.empty() ? triples : c1);
  report.add("C2 anchor", c2.empty(), c2.empty() ? pairs : c2);
  // For a constant function the anchor derivative vanishes and C3 reduces to linearity.
  report.add("C3 function Leibniz", c3.empty(),
             c3.empty() ? "constant functions only; anchor derivative vanishes on invariant sections" : c3);
  report.add("C4 pairing", c4.empty(), c4.empty() ? triples : c4);
  report.add("C5 symmetric part", c5.empty(), c5.empty() ? pairs + "; D vanishes on invariant functions" : c5);
  return report;
}

Matrix<Rational> b_transform_matrix(const Form<Rational>& b) {
  if (b.degree() != 2) throw GcredError("B-transform requires a 2-form");
  const std::size_t n = b.dim();
  Matrix<Rational> bm = b.to_matrix();
  Matrix<Rational> out = Matrix<Rational>::identity(2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(n + j, i) = bm(j, i);
  return out;
}

BTransform b_transform(const CourantModel& model, const Form<Rational>& b) {
  if (b.dim() != model.dim() || b.degree() != 2) throw GcredError("B-transform requires a 2-form on the algebra");
  return {CourantModel::unchecked(model.algebra(), model.twist() + model.algebra().d(b)), b, b_transform_matrix(b)};
}

Form<Rational> curvature_from_bracket(const CourantModel& model, const Form<Rational>& beta) {
  const std::size_t n = model.dim();
  auto sigma = [&](std::size_t i) {
    Section<Rational> s{unit_vec<Rational>(n, i), zero_vec<Rational>(n)};
    s.xi = interior(s.x, beta).components();
    return s;
  };
  Form<Rational> out(n, 3);
  for (auto mask : masks_of_degree(n, 3)) {
    auto idx = mask_indices(mask);
    Rational v = Rational(2) * model.pairing(model.bracket(sigma(idx[0]), sigma(idx[1])), sigma(idx[2]));
    out.add_term(mask, v);
  }
  return out;
}

Form<Rational> splitting_curvature(const CourantModel& model, const Form<Rational>& beta) {
  if (beta.dim() != model.dim() || beta.degree() != 2) throw GcredError("splitting must be the graph of a 2-form");
  Form<Rational> h = model.twist() + model.algebra().d(beta);
  Form<Rational> check = curvature_from_bracket(model, beta);
  if (h != check) {
    throw InternalError("splitting curvature mismatch: H + d beta = " + to_string(h) + ", bracket gives " +
                        to_string(check));
  }
  return h;
}

Form<Rational> splitting_curvature(const CourantModel& model, const Matrix<Rational>& beta) {
  if (beta.rows() != model.dim() || beta.cols() != model.dim()) throw GcredError("splitting matrix has wrong size");
  if (!beta.is_antisymmetric()) throw GcredError("splitting is not isotropic: beta is not antisymmetric");
  return splitting_curvature(model, Form<Rational>::from_matrix(beta));
}

}  // namespace gcred
