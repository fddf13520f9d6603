#pragma once

// Courant algebras of hemisemidirect type a = g + h and extended actions Psi: a -> m + m*.
// Basis elements of a are labelled a1..ak (g) and l1..lh (h).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcred/courant.hpp"
#include "gcred/lie_algebra.hpp"
#include "gcred/matrix.hpp"
#include "gcred/metric.hpp"
#include "gcred/subspace.hpp"
#include "gcred/validation.hpp"

namespace gcred {

struct AlgebraElement {
  Vec<Rational> gamma;   // in g
  Vec<Rational> lambda;  // in h

  bool operator==(const AlgebraElement& o) const { return gamma == o.gamma && lambda == o.lambda; }
};

class CourantAlgebra {
 public:
  CourantAlgebra() = default;

  /// module[i] is the action of the i-th basis element of g on h; throws GcredError unless
  /// the matrices form a representation.
  CourantAlgebra(LieAlgebra g, std::size_t h_dim, std::vector<Matrix<Rational>> module);

  /// g acting trivially on h.
  static CourantAlgebra trivial(LieAlgebra g, std::size_t h_dim);

  const LieAlgebra& g() const { return g_; }
  std::size_t g_dim() const { return g_.dim(); }
  std::size_t h_dim() const { return h_dim_; }
  std::size_t dim() const { return g_.dim() + h_dim_; }
  const Matrix<Rational>& rho(std::size_t i) const { return module_.at(i); }

  /// The representation applied to gamma.
  Matrix<Rational> rho(const Vec<Rational>& gamma) const;

  AlgebraElement basis(std::size_t a) const;
  std::string label(std::size_t a) const;

 private:
  LieAlgebra g_;
  std::size_t h_dim_ = 0;
  std::vector<Matrix<Rational>> module_;
};

/// [[(g1, l1), (g2, l2)]] = ([g1, g2], g1 . l2).
AlgebraElement hemi_bracket(const CourantAlgebra& algebra, const AlgebraElement& a, const AlgebraElement& b);

/// Leibniz, anchor and exactness of the hemisemidirect bracket on basis elements.
ValidationReport check_courant_algebra(const CourantAlgebra& algebra);

class ExtendedAction {
 public:
  ExtendedAction() = default;

  /// g_images[i] = X_i + xi_i; h_forms[l] = Psi(l-th basis element of h) as 1-form components.
  ExtendedAction(CourantModel model, CourantAlgebra algebra, std::vector<Section<Rational>> g_images,
                 std::vector<Vec<Rational>> h_forms);

  const CourantModel& model() const { return model_; }
  const CourantAlgebra& algebra() const { return algebra_; }
  const std::vector<Section<Rational>>& g_images() const { return g_images_; }
  const std::vector<Vec<Rational>>& h_forms() const { return h_forms_; }

  Section<Rational> psi(const AlgebraElement& a) const;

  /// Images of the basis of a, g part first.
  std::vector<Section<Rational>> images() const;

  /// X_i as columns (n x k).
  Matrix<Rational> generator_matrix() const;

 private:
  CourantModel model_;
  CourantAlgebra algebra_;
  std::vector<Section<Rational>> g_images_;
  std::vector<Vec<Rational>> h_forms_;
};

/// Three verdicts: closed h-forms, bracket morphism on basis pairs, i_X H = d xi.
ValidationReport validate_action(const ExtendedAction& action);

/// Shadow of freeness: X_1..X_k linearly independent.
Check check_free(const ExtendedAction& action);

struct KSpaces {
  Subspace<Rational> k;
  Subspace<Rational> k_perp;
  Subspace<Rational> k_meet;  // K intersected with its orthogonal
};

KSpaces k_spaces(const ExtendedAction& action);

struct IsotropyResult {
  bool isotropic = true;
  std::string witness;  // "<a1, l2> = 1/2" on failure
};

IsotropyResult is_isotropic(const ExtendedAction& action);

/// K^G = K-perp intersected with G K-perp; throws GcredError if K is not isotropic.
Subspace<Rational> k_metric_complement(const ExtendedAction& action, const GeneralizedMetric& metric);

/// The adjoint action of a: section coordinates v -> [[Psi(a), v]].
Matrix<Rational> adjoint_matrix(const ExtendedAction& action, std::size_t basis_index);

/// Checks that every generator's adjoint action commutes with the operator on m + m*.
Check check_preserves_operator(const ExtendedAction& action, const Matrix<Rational>& op, const std::string& name);

/// Checks [ad X_i, I] = 0 for an operator on m, the shadow of L_X I = 0.
Check check_preserves_tangent_operator(const ExtendedAction& action, const Matrix<Rational>& op,
                                       const std::string& name);

}  // namespace gcred
