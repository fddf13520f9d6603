#pragma once

// Seeded random extended actions of abelian algebras that preserve a generalized metric and a
// list of complex structures, with i_X H = d xi, isotropic K, free generators and psi(g) an
// ideal of Ann(Psi(h)).

#include <optional>
#include <random>
#include <vector>

#include "gcred/action.hpp"
#include "gcred/metric.hpp"

namespace gcred {

struct SamplingOptions {
  std::size_t max_generators = 2;
  std::size_t max_moment_forms = 3;
  int attempts = 60;
};

/// Generators preserving G and every operator, with i_X H exact: a subspace of m.
Subspace<Rational> preserving_directions(const CourantModel& model, const GeneralizedMetric& metric,
                                         const std::vector<Matrix<Rational>>& operators);

/// nullopt when no admissible action was found within the attempt budget.
std::optional<ExtendedAction> random_preserved_action(const CourantModel& model, const GeneralizedMetric& metric,
                                                      const std::vector<Matrix<Rational>>& operators,
                                                      std::mt19937& rng, const SamplingOptions& options = {});

}  // namespace gcred
