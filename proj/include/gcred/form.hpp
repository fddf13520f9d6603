#pragma once

// Exterior forms on F^n in the dual basis f_1..f_n, with coefficients stored per
// strictly increasing multi-index (a bitmask). Evaluation follows the determinant
// convention (f_1 ^ f_2)(e_1, e_2) = 1.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcred/matrix.hpp"

namespace gcred {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxFormDim = 24;

inline int mask_degree(Mask m) { return std::popcount(m); }

inline std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; m != 0; ++k, m >>= 1)
    if (m & 1U) out.push_back(k);
  return out;
}

/// All masks of a given degree over n indices, in increasing numeric order.
std::vector<Mask> masks_of_degree(std::size_t n, int degree);

template <class F>
class Form {
 public:
  Form() = default;
  Form(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
    if (dim > kMaxFormDim) throw std::invalid_argument("form dimension exceeds supported maximum");
  }

  /// coeff * f_{i1} ^ ... ^ f_{ik} for 0-based indices in any order (sign of the sort applied).
  static Form monomial(std::size_t dim, std::vector<std::size_t> indices, const F& coeff = F(1)) {
    Form out(dim, static_cast<int>(indices.size()));
    int sign = 1;
    for (std::size_t a = 0; a < indices.size(); ++a) {
      if (indices[a] >= dim) throw std::invalid_argument("form index out of range");
      for (std::size_t b = a + 1; b < indices.size(); ++b) {
        if (indices[a] == indices[b]) return out;
        if (indices[a] > indices[b]) sign = -sign;
      }
    }
    Mask m = 0;
    for (auto i : indices) m |= Mask{1} << i;
    out.add_term(m, sign > 0 ? coeff : F(-coeff));
    return out;
  }

  static Form constant(std::size_t dim, const F& value) {
    Form out(dim, 0);
    out.add_term(0, value);
    return out;
  }

  /// The 1-form with the given components in the dual basis.
  static Form covector(const Vec<F>& components) {
    Form out(components.size(), 1);
    for (std::size_t k = 0; k < components.size(); ++k) out.add_term(Mask{1} << k, components[k]);
    return out;
  }

  /// The 2-form with b(e_i, e_j) = m(i, j); m must be antisymmetric.
  static Form from_matrix(const Matrix<F>& m) {
    if (!m.is_antisymmetric()) throw std::invalid_argument("2-form matrix is not antisymmetric");
    Form out(m.rows(), 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i + 1; j < m.cols(); ++j) out.add_term((Mask{1} << i) | (Mask{1} << j), m(i, j));
    return out;
  }

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Mask, F>& terms() const { return terms_; }

  /// True for the flagged result of differentiating a top-degree form.
  bool beyond_top() const { return degree_ > static_cast<int>(dim_); }

  F coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? F(0) : it->second;
  }

  void add_term(Mask m, const F& c) {
    if (mask_degree(m) != degree_) throw std::invalid_argument("term degree does not match form degree");
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  bool is_zero_form() const { return terms_.empty(); }

  /// Components of a 1-form.
  Vec<F> components() const {
    if (degree_ != 1) throw std::invalid_argument("components() requires a 1-form");
    Vec<F> v(dim_, F(0));
    for (const auto& [m, c] : terms_) v[static_cast<std::size_t>(std::countr_zero(m))] = c;
    return v;
  }

  /// Antisymmetric matrix m(i, j) = b(e_i, e_j) of a 2-form.
  Matrix<F> to_matrix() const {
    if (degree_ != 2) throw std::invalid_argument("to_matrix() requires a 2-form");
    Matrix<F> out(dim_, dim_);
    for (const auto& [m, c] : terms_) {
      auto idx = mask_indices(m);
      out(idx[0], idx[1]) = c;
      out(idx[1], idx[0]) = -c;
    }
    return out;
  }

  Form& operator+=(const Form& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, F(-c));
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  Form operator-() const {
    Form out(dim_, degree_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, F(-c));
    return out;
  }
  friend Form operator*(const F& s, const Form& a) {
    Form out(a.dim_, a.degree_);
    if (is_zero(s)) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
  }

  bool operator==(const Form& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const Form& o) const { return !(*this == o); }

  Form conj() const {
    Form out(dim_, degree_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, gcred::conj(c));
    return out;
  }

  bool is_real_form() const {
    for (const auto& [m, c] : terms_)
      if (!is_real(c)) return false;
    return true;
  }

  void check_compatible(const Form& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw std::invalid_argument("form dimension or degree mismatch");
  }

 private:
  std::size_t dim_ = 0;
  int degree_ = 0;
  std::map<Mask, F> terms_;
};

template <class To, class From>
Form<To> convert_form(const Form<From>& a) {
  Form<To> out(a.dim(), a.degree());
  for (const auto& [m, c] : a.terms()) out.add_term(m, To(c));
  return out;
}

inline Form<Rational> real_form(const Form<Gaussian>& a) {
  Form<Rational> out(a.dim(), a.degree());
  for (const auto& [m, c] : a.terms()) {
    if (!is_real(c)) throw std::domain_error("form is not real");
    out.add_term(m, c.re());
  }
  return out;
}

/// Sign of moving the indices of b past those of a when merging a ^ b.
inline int wedge_sign(Mask a, Mask b) {
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    Mask low = rest & (~rest + 1);
    swaps += std::popcount(a & ~(low | (low - 1)));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

template <class F>
Form<F> wedge(const Form<F>& a, const Form<F>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  Form<F> out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      F c = ca * cb;
      out.add_term(ma | mb, wedge_sign(ma, mb) > 0 ? c : F(-c));
    }
  }
  return out;
}

/// Interior product with the basis vector e_k.
template <class F>
Form<F> interior_basis(std::size_t k, const Form<F>& a) {
  Form<F> out(a.dim(), a.degree() - 1);
  const Mask bit = Mask{1} << k;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & bit)) continue;
    bool odd = std::popcount(m & (bit - 1)) % 2 != 0;
    out.add_term(m & ~bit, odd ? F(-c) : c);
  }
  return out;
}

/// Interior product i_X a; a degree -1 antiderivation.
template <class F>
Form<F> interior(const Vec<F>& x, const Form<F>& a) {
  if (x.size() != a.dim()) throw std::invalid_argument("interior: dimension mismatch");
  Form<F> out(a.dim(), a.degree() - 1);
  if (a.degree() <= 0) return out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (is_zero(x[k])) continue;
    out += x[k] * interior_basis(k, a);
  }
  return out;
}

/// a(v_1, ..., v_k).
template <class F>
F evaluate(const Form<F>& a, const std::vector<Vec<F>>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree()) throw std::invalid_argument("evaluate: wrong number of vectors");
  Form<F> cur = a;
  for (const auto& v : vectors) cur = interior(v, cur);
  return cur.coefficient(0);
}

/// Pullback along the linear map whose columns are the images of the new basis vectors.
template <class F>
Form<F> pullback(const Form<F>& a, const Matrix<F>& map) {
  if (map.rows() != a.dim()) throw std::invalid_argument("pullback: matrix height mismatch");
  const std::size_t m = map.cols();
  std::vector<Form<F>> pulled_basis;
  for (std::size_t j = 0; j < a.dim(); ++j) pulled_basis.push_back(Form<F>::covector(map.row(j)));
  Form<F> out(m, a.degree());
  for (const auto& [mask, c] : a.terms()) {
    Form<F> term = Form<F>::constant(m, c);
    for (auto j : mask_indices(mask)) term = wedge(term, pulled_basis[j]);
    out += term;
  }
  return out;
}

/// Renders e.g. "f1^f2 - 1/2 f3^f4"; the zero form renders as "0".
template <class F>
std::string to_string(const Form<F>& a) {
  if (a.is_zero_form()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    std::string coeff = to_string(c);
    bool negative = !coeff.empty() && coeff.front() == '-' && coeff.find_first_of("+-", 1) == std::string::npos;
    if (negative) coeff.erase(0, 1);
    bool compound = coeff.find_first_of("+-", 0) != std::string::npos;
    if (compound) coeff = "(" + coeff + ")";
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string atoms;
    for (auto k : mask_indices(m)) {
      if (!atoms.empty()) atoms += '^';
      atoms += "f" + std::to_string(k + 1);
    }
    if (atoms.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += atoms;
    } else {
      out += coeff + " " + atoms;
    }
  }
  return out;
}

}  // namespace gcred
