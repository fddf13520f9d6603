#pragma once

// The exact Courant algebroid on m + m* for a Lie algebra m and closed invariant 3-form H:
//   <X + xi, Y + eta> = 1/2 (eta(X) + xi(Y))
//   [[X + xi, Y + eta]] = [X, Y] + L_X eta - i_Y d xi + i_Y i_X H
// Section coordinates are ordered (X^1..X^n, xi_1..xi_n).

#include <cstddef>
#include <string>
#include <vector>

#include "gcred/form.hpp"
#include "gcred/lie_algebra.hpp"
#include "gcred/matrix.hpp"
#include "gcred/subspace.hpp"
#include "gcred/validation.hpp"

namespace gcred {

template <class F>
struct Section {
  Vec<F> x;   // vector part in m
  Vec<F> xi;  // covector part in m*

  static Section zero(std::size_t n) { return {zero_vec<F>(n), zero_vec<F>(n)}; }

  static Section from_coordinates(const Vec<F>& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("section coordinates must have even length");
    const std::size_t n = v.size() / 2;
    return {Vec<F>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)),
            Vec<F>(v.begin() + static_cast<std::ptrdiff_t>(n), v.end())};
  }

  Vec<F> coordinates() const {
    Vec<F> v(x);
    v.insert(v.end(), xi.begin(), xi.end());
    return v;
  }

  Form<F> xi_form() const { return Form<F>::covector(xi); }

  bool operator==(const Section& o) const { return x == o.x && xi == o.xi; }
  bool operator!=(const Section& o) const { return !(*this == o); }
};

/// Label of the a-th basis section: e1..en, f1..fn.
std::string basis_label(std::size_t n, std::size_t a);

/// Renders e.g. "e1 + 1/2 f3"; the zero section renders as "0".
template <class F>
std::string to_string(const Section<F>& s) {
  const std::size_t n = s.x.size();
  auto coords = s.coordinates();
  std::string out;
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (is_zero(coords[a])) continue;
    std::string c = to_string(coords[a]);
    bool negative = c.front() == '-' && c.find_first_of("+-", 1) == std::string::npos;
    if (negative) c.erase(0, 1);
    if (c.find_first_of("+-") != std::string::npos) c = "(" + c + ")";
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += (c == "1" ? "" : c + " ") + basis_label(n, a);
  }
  return out.empty() ? "0" : out;
}

class CourantModel {
 public:
  CourantModel() = default;

  /// Throws GcredError if the algebra violates Jacobi or dH != 0.
  CourantModel(LieAlgebra algebra, Form<Rational> twist);

  /// Skips the Jacobi and closedness checks; for probing axiom failures.
  static CourantModel unchecked(LieAlgebra algebra, Form<Rational> twist);

  const LieAlgebra& algebra() const { return algebra_; }
  const Form<Rational>& twist() const { return twist_; }
  std::size_t dim() const { return algebra_.dim(); }
  std::size_t section_dim() const { return 2 * algebra_.dim(); }

  /// 2n x 2n matrix P of the pairing: <u, v> = u^T P v.
  Matrix<Rational> pairing_matrix() const;

  template <class F>
  F pairing(const Section<F>& a, const Section<F>& b) const {
    check(a);
    check(b);
    return F(make_rational(1, 2)) * (dot(b.xi, a.x) + dot(a.xi, b.x));
  }

  /// Evaluates the bracket formula term by term.
  template <class F>
  Section<F> bracket_direct(const Section<F>& a, const Section<F>& b) const {
    check(a);
    check(b);
    Form<F> h = convert_form<F>(twist_);
    Section<F> out;
    out.x = algebra_.bracket(a.x, b.x);
    Form<F> form = algebra_.lie_derivative(a.x, b.xi_form()) - interior(b.x, algebra_.d(a.xi_form())) +
                   interior(b.x, interior(a.x, h));
    out.xi = form.components();
    return out;
  }

  /// Bracket via the precomputed table of basis brackets.
  template <class F>
  Vec<F> bracket_coordinates(const Vec<F>& u, const Vec<F>& v) const {
    const std::size_t m = section_dim();
    if (u.size() != m || v.size() != m) throw std::invalid_argument("bracket: section dimension mismatch");
    Vec<F> out(m, F(0));
    for (std::size_t a = 0; a < m; ++a) {
      if (is_zero(u[a])) continue;
      for (std::size_t b = 0; b < m; ++b) {
        if (is_zero(v[b])) continue;
        const auto& t = table_[a * m + b];
        if (t.empty()) continue;
        F uv = u[a] * v[b];
        for (std::size_t c = 0; c < m; ++c)
          if (!is_zero(t[c])) out[c] += F(t[c]) * uv;
      }
    }
    return out;
  }

  template <class F>
  Section<F> bracket(const Section<F>& a, const Section<F>& b) const {
    check(a);
    check(b);
    return Section<F>::from_coordinates(bracket_coordinates(a.coordinates(), b.coordinates()));
  }

  /// Matrix of v -> [[s, v]].
  Matrix<Rational> left_bracket_matrix(const Section<Rational>& s) const;

  /// Matrix of v -> [[v, s]].
  Matrix<Rational> right_bracket_matrix(const Section<Rational>& s) const;

  bool operator==(const CourantModel& o) const { return algebra_ == o.algebra_ && twist_ == o.twist_; }

 private:
  template <class F>
  void check(const Section<F>& s) const {
    if (s.x.size() != dim() || s.xi.size() != dim()) throw std::invalid_argument("section dimension mismatch");
  }
  void build_table();

  LieAlgebra algebra_;
  Form<Rational> twist_;
  std::vector<Vec<Rational>> table_;  // [[u_a, u_b]] for basis sections; empty entry = 0
};

/// C1, C2, C4, C5 on all basis triples of m + m*, and C3 for constant functions.
ValidationReport check_axioms(const CourantModel& model);

/// Change of splitting by a 2-form B: X + xi -> X + xi - i_X B, twist H -> H + dB.
struct BTransform {
  CourantModel target;
  Form<Rational> b;
  Matrix<Rational> matrix;  // 2n x 2n on section coordinates

  template <class F>
  Section<F> apply(const Section<F>& s) const {
    Section<F> out = s;
    Form<F> bf = convert_form<F>(b);
    out.xi = sub(s.xi, interior(s.x, bf).components());
    return out;
  }
};

BTransform b_transform(const CourantModel& model, const Form<Rational>& b);

/// Matrix of X + xi -> X + xi - i_X B.
Matrix<Rational> b_transform_matrix(const Form<Rational>& b);

/// Twist of the model in the splitting X -> X + i_X beta, namely H + d beta. Checked against
/// 2 <[[sX, sY]], sZ> on all basis triples.
Form<Rational> splitting_curvature(const CourantModel& model, const Form<Rational>& beta);

/// Same for a splitting given by a matrix beta(e_i, e_j); throws if it is not antisymmetric.
Form<Rational> splitting_curvature(const CourantModel& model, const Matrix<Rational>& beta);

/// The 3-form (X, Y, Z) -> 2 <[[sX, sY]], sZ> for the graph splitting of beta.
Form<Rational> curvature_from_bracket(const CourantModel& model, const Form<Rational>& beta);

}  // namespace gcred
