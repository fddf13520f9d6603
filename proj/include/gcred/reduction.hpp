#pragma once

// Reduction of an extended action at the invariant level, in two steps:
// restriction to p = Ann(Psi(h)), then quotient of p by psi(g) after straightening the
// generators with a B-field.

#include <optional>
#include <random>
#include <vector>

#include "gcred/action.hpp"
#include "gcred/courant.hpp"
#include "gcred/validation.hpp"

namespace gcred {

struct Restriction {
  Subspace<Rational> p;           // in m
  Matrix<Rational> inclusion;     // n x dim p, canonical basis of p
  Matrix<Rational> left_inverse;  // dim p x n
  CourantModel model;             // (p, H|p)
  ExtendedAction action;          // g -> p + p*, h dropped
};

/// Throws GcredError if psi(g) is not contained in p.
Restriction restrict_action(const ExtendedAction& action);

/// Connection 1-forms dual to the generators whose kernel is the g-orthogonal complement of
/// the generators (g given on the tangent algebra of the action).
std::vector<Vec<Rational>> default_connection(const ExtendedAction& tangent_action, const Matrix<Rational>& g);

/// B = sum_i theta_i ^ xi_i + 1/2 sum_ij xi_j(X_i) theta_i ^ theta_j. Throws GcredError unless
/// theta_i(X_j) = delta_ij; verifies that every generator maps to its tangent part.
Form<Rational> straighten(const ExtendedAction& action, const std::vector<Vec<Rational>>& theta);

struct QuotientReduction {
  Matrix<Rational> representatives;    // p x r
  Matrix<Rational> vector_projection;  // r x p
  CourantModel model;                  // reduced algebra and twist
  ValidationReport report;
};

/// Quotient of a model by purely tangent generators X (columns). Throws GcredError if span X is
/// not an ideal or the twist is not basic.
QuotientReduction quotient_reduce(const CourantModel& model, const Matrix<Rational>& generators);

struct ReduceOptions {
  std::optional<std::vector<Vec<Rational>>> connection;  // theta_i as 1-forms on m
  std::optional<Matrix<Rational>> metric;                // g on m, used for the default connection
};

struct ReductionResult {
  KSpaces spaces;
  Restriction restriction;
  std::vector<Vec<Rational>> connection;  // on p
  Form<Rational> straightening_b;         // on p
  Form<Rational> straightened_twist;      // H|p + dB on p
  Matrix<Rational> representatives;       // p x r
  Matrix<Rational> vector_projection;     // r x p
  CourantModel reduced_model;
  Matrix<Rational> projection;  // 2r x 2n, valid on K-perp, kernel there is K meet K-perp
  ValidationReport report;

  std::size_t reduced_dim() const { return reduced_model.dim(); }

  /// Representatives of the reduced basis as vectors of m (n x r).
  Matrix<Rational> representatives_in_m() const { return restriction.inclusion * representatives; }

  /// Some preimage in K-perp of reduced section coordinates.
  Vec<Rational> lift(const Vec<Rational>& reduced) const;
};

/// Restrict, straighten and quotient, with every intermediate claim checked. Throws GcredError
/// when a hypothesis fails (invalid or non-isotropic action, non-free, non-ideal, ...).
ReductionResult reduce(const ExtendedAction& action, const ReduceOptions& options = {});

/// pi(K) meet pi(K-perp) == pi(K meet K-perp).
Check exactness_check(const ExtendedAction& action);

/// Brackets reduced basis sections through randomized lifts in K-perp and compares with the
/// reduced model's bracket.
ValidationReport reduced_bracket_oracle(const ExtendedAction& action, const ReductionResult& result,
                                        std::mt19937& rng, int trials);

}  // namespace gcred
