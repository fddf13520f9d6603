#pragma once

// Metric, strong KT, hyper KT and generalized Kahler structures on a Courant model, and their
// reduction under an extended action. The V+ side of an SKT structure carries
// L = graph of (b - i omega) over T^{1,0}; the V- side carries the graph of (b + i omega).

#include <array>
#include <optional>
#include <string>

#include "gcred/action.hpp"
#include "gcred/complex.hpp"
#include "gcred/metric.hpp"
#include "gcred/reduction.hpp"

namespace gcred {

enum class Side { plus, minus };

std::string side_name(Side side);

/// The +i-eigenspace of the structure on V+ (resp. V-) in (m + m*) (x) Q(i).
Subspace<Gaussian> skt_eigenspace(const GeneralizedMetric& metric, const Matrix<Rational>& i, Side side);

/// Orthogonality, integrability, bracket closure of the eigenspace, the torsion condition
/// i_Y i_X (dc + H) = 0 on T^{1,0}, and d^c omega = -(H + db) (V+) or H + db (V-).
ValidationReport validate_skt(const CourantModel& model, const GeneralizedMetric& metric, const Matrix<Rational>& i,
                              Side side = Side::plus);

struct MetricReduction {
  ReductionResult base;  // reduction with the g-orthogonal default connection
  GeneralizedMetric metric;
  GeneralizedMetric reduced;
  Subspace<Rational> v_plus_perp;   // V+ meet K-perp
  Subspace<Rational> v_minus_perp;  // V- meet K-perp
  Subspace<Rational> tau_plus;      // in m
  Subspace<Rational> tau_minus;
  Matrix<Rational> tau_plus_lifts;   // n x r, column a lies over the reduced basis vector a
  Matrix<Rational> tau_minus_lifts;
  Matrix<Rational> horizontal_lifts;  // n x r, Y^h
  Matrix<Rational> xi_metric;         // p x k, xi_gamma - i_{X_gamma} b restricted to p
  Matrix<Rational> theta;             // k x p, rows are 1-forms on p
  Matrix<Rational> theta_plus;
  Matrix<Rational> theta_minus;
  Matrix<Rational> chi;  // k x p, chi(Y) = sum_gamma chi(gamma, Y) X_gamma
  ValidationReport report;

  const Subspace<Rational>& tau(Side side) const { return side == Side::plus ? tau_plus : tau_minus; }
  const Matrix<Rational>& tau_lifts(Side side) const { return side == Side::plus ? tau_plus_lifts : tau_minus_lifts; }
  const Subspace<Rational>& v_perp(Side side) const { return side == Side::plus ? v_plus_perp : v_minus_perp; }
};

/// Throws GcredError if the action does not preserve the metric, K is not isotropic, or tau+-
/// is not transverse to the orbit directions.
MetricReduction reduce_metric(const ExtendedAction& action, const GeneralizedMetric& metric);

struct ReducedCurvature {
  Form<Rational> via_db;       // H + db + dB(theta+) pushed down
  Form<Rational> via_f;        // (H + db + sum F_k ^ xi_k) on tau+
  Form<Rational> via_splitting;  // metric splitting of the reduced metric on the reduced model
  bool agree = false;
};

/// Throws InternalError, with all three forms, if the routes disagree.
ReducedCurvature reduced_metric_curvature(const ExtendedAction& action, const MetricReduction& reduction);

struct SKTReduction {
  MetricReduction metric;
  Check criterion;  // I(tau) = tau
  std::optional<Matrix<Rational>> reduced_i;
  ValidationReport report;
};

/// Throws GcredError if the structure is not SKT or not preserved. A failing criterion is a
/// verdict, not an error.
SKTReduction reduce_skt(const ExtendedAction& action, const GeneralizedMetric& metric, const Matrix<Rational>& i,
                        Side side = Side::plus);

/// Same, reusing a metric reduction.
SKTReduction reduce_skt(const ExtendedAction& action, const MetricReduction& metric, const Matrix<Rational>& i,
                        Side side = Side::plus);

struct HKTReduction {
  std::array<std::optional<SKTReduction>, 3> parts;  // I, J, K
  std::optional<std::array<Matrix<Rational>, 3>> reduced;
  ValidationReport report;
};

/// Quaternion relations I^2 = J^2 = -1, IJ = K are required; each criterion is reported.
HKTReduction reduce_hkt(const ExtendedAction& action, const GeneralizedMetric& metric,
                        const std::array<Matrix<Rational>, 3>& structures);

struct GKStructure {
  Matrix<Rational> j1;
  Matrix<Rational> j2;
};

struct Bihermitian {
  GeneralizedMetric metric;
  Matrix<Rational> i_plus;
  Matrix<Rational> i_minus;
};

/// J1 = I+ on V+ and I- on V-; J2 = I+ on V+ and -I- on V-.
GKStructure gk_from_bihermitian(const GeneralizedMetric& metric, const Matrix<Rational>& i_plus,
                                const Matrix<Rational>& i_minus);

struct GKValidation {
  ValidationReport report;
  std::optional<Bihermitian> data;
};

GKValidation validate_gk(const CourantModel& model, const GKStructure& gk);

struct GKReduction {
  std::optional<MetricReduction> metric;
  std::optional<GKStructure> reduced;
  std::optional<Bihermitian> reduced_data;
  ValidationReport report;
};

/// Reduces through K^G and through tau+- and requires both routes to agree.
GKReduction reduce_gk(const ExtendedAction& action, const GKStructure& gk);

}  // namespace gcred
