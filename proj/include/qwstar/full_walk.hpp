#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qwstar/graph.hpp"
#include "qwstar/state.hpp"
#include "qwstar/trace.hpp"

namespace qwstar {

// Brute-force evolution on the full arc space, U = S (2 d* d - I).
//
// (U psi)(a) = (2 / deg o(a)) * sum_{t(b) = o(a)} psi(b) - psi(reverse a)   if o(a) is in the coin support
// (U psi)(a) = sign * psi(reverse a)                                         if o(a) is a leaf (reversal: -1)
//
// Each step is O(|A|): one pass accumulates incoming sums per vertex, one
// pass writes the outputs. No operator matrix is formed.

/// Uniform state on the clique arcs, zero on the star.
WalkState initial_state(const GluedGraph& graph);

/// Shift S: (S psi)(a) = psi(reverse a).
std::vector<Complex> apply_shift(const GluedGraph& graph, std::span<const Complex> amplitudes);

/// Coin 2 d* d - I.
std::vector<Complex> apply_coin(const GluedGraph& graph, std::span<const Complex> amplitudes, LeafPhase phase);

/// One application of U. Throws std::invalid_argument on dimension mismatch.
WalkState step(const GluedGraph& graph, const WalkState& state, LeafPhase phase);

/// p(v) = sum over arcs into v of |psi(a)|^2. Throws std::out_of_range for unknown v.
double vertex_probability(const GluedGraph& graph, const WalkState& state, VertexId v);

/// Class sums scaled by 1/sqrt(|class|).
CollapsedState collapse(const GluedGraph& graph, const WalkState& state);

/// Class-uniform arc state with amplitude Psi(B)/sqrt(|B|) on every arc of B.
WalkState lift(const GluedGraph& graph, const CollapsedState& collapsed);

/// Projection onto class-uniform states, lift(collapse(psi)).
WalkState project(const GluedGraph& graph, const WalkState& state);

/// Runs `t_max` steps from `state`, recording p(v*) and the collapsed
/// amplitudes on the arcs into v* before the first step and after each one.
ProbabilityTrace evolve(const GluedGraph& graph, const WalkState& state, std::size_t t_max, LeafPhase phase);

} // namespace qwstar
