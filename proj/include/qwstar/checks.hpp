#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qwstar/collapsed_walk.hpp"
#include "qwstar/graph.hpp"
#include "qwstar/state.hpp"

namespace qwstar {

// Cross-evaluator checks shared by the verify command and the test suites.

/// Unit-norm state with i.i.d. complex Gaussian amplitudes.
WalkState random_state(const GluedGraph& graph, std::mt19937_64& rng);

/// max over `count` random states of |U P psi - P U psi|, P the class projection.
double commutation_defect(const GluedGraph& graph, LeafPhase phase, std::size_t count, std::uint64_t seed);

/// max over `count` random states of | |U psi| - 1 |.
double unitarity_defect(const GluedGraph& graph, LeafPhase phase, std::size_t count, std::uint64_t seed);

/// The full walk conjugated onto the class space: column j is collapse(U lift(e_j)).
Matrix5 conjugated_evolution(const GluedGraph& graph, LeafPhase phase);

/// Same conjugation for the shift alone.
Matrix5 conjugated_shift(const GluedGraph& graph);

} // namespace qwstar
