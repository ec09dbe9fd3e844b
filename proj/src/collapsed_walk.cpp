#include "qwstar/collapsed_walk.hpp"

#include <cmath>
#include <stdexcept>

namespace qwstar {

ReducedOperators build_reduced_operators(std::size_t clique_size, std::size_t leaf_count, LeafPhase phase) {
    (void)class_sizes(clique_size, leaf_count); // validates N >= 3, m >= 1
    const double n = static_cast<double>(clique_size);
    const double m = static_cast<double>(leaf_count);
    const double hub_degree = n + m - 1.0;

    ReducedOperators ops;
    ops.clique_size = clique_size;
    ops.leaf_count = leaf_count;
    ops.phase = phase;

    ops.shift.setZero();
    ops.shift(0, 0) = 1.0;
    ops.shift(col_of(ArcClass::CliqueIn), col_of(ArcClass::CliqueOut)) = 1.0;
    ops.shift(col_of(ArcClass::CliqueOut), col_of(ArcClass::CliqueIn)) = 1.0;
    ops.shift(col_of(ArcClass::LeafIn), col_of(ArcClass::LeafOut)) = 1.0;
    ops.shift(col_of(ArcClass::LeafOut), col_of(ArcClass::LeafIn)) = 1.0;

    // Each row collects the arcs terminating in that vertex class.
    ops.boundary.setZero();
    const auto rest = row_of(VertexClass::CliqueRest);
    const auto hub = row_of(VertexClass::Hub);
    ops.boundary(rest, col_of(ArcClass::Interior)) = std::sqrt((n - 2.0) / (n - 1.0));
    ops.boundary(rest, col_of(ArcClass::CliqueOut)) = 1.0 / std::sqrt(n - 1.0);
    ops.boundary(hub, col_of(ArcClass::CliqueIn)) = std::sqrt((n - 1.0) / hub_degree);
    ops.boundary(hub, col_of(ArcClass::LeafIn)) = std::sqrt(m / hub_degree);
    if (phase == LeafPhase::plain) ops.boundary(row_of(VertexClass::Leaves), col_of(ArcClass::LeafOut)) = 1.0;

    ops.evolution = ops.shift * (2.0 * ops.boundary.transpose() * ops.boundary - Matrix5::Identity());
    ops.discriminant = ops.boundary * ops.shift * ops.boundary.transpose();
    return ops;
}

CollapsedState collapsed_initial_state(std::size_t clique_size, std::size_t leaf_count) {
    (void)class_sizes(clique_size, leaf_count);
    const double n = static_cast<double>(clique_size);
    CollapsedState s;
    s[ArcClass::Interior] = std::sqrt((n - 2.0) / n);
    s[ArcClass::CliqueIn] = 1.0 / std::sqrt(n);
    s[ArcClass::CliqueOut] = 1.0 / std::sqrt(n);
    return s;
}

Vector5c to_vector(const CollapsedState& state) {
    Vector5c v;
    for (std::size_t k = 0; k < kArcClassCount; ++k) v(static_cast<Eigen::Index>(k)) = state.amplitudes[k];
    return v;
}

CollapsedState from_vector(const Vector5c& v, std::size_t time) {
    CollapsedState s;
    s.time = time;
    for (std::size_t k = 0; k < kArcClassCount; ++k) s.amplitudes[k] = v(static_cast<Eigen::Index>(k));
    return s;
}

CollapsedState step(const ReducedOperators& ops, const CollapsedState& state) {
    return from_vector(ops.evolution.cast<Complex>() * to_vector(state), state.time + 1);
}

double success_probability(const CollapsedState& state) noexcept {
    return std::norm(state[ArcClass::CliqueIn]) + std::norm(state[ArcClass::LeafIn]);
}

ProbabilityTrace evolve_collapsed(const ReducedOperators& ops, const CollapsedState& initial, std::size_t t_max) {
    ProbabilityTrace trace;
    trace.metadata.clique_size = ops.clique_size;
    trace.metadata.leaf_count = ops.leaf_count;
    trace.metadata.mode = "collapsed";
    trace.metadata.leaf_phase = ops.phase;
    trace.rows.reserve(t_max + 1);

    const Eigen::Matrix<Complex, 5, 5> u = ops.evolution.cast<Complex>();
    Vector5c psi = to_vector(initial);
    const auto k_in = col_of(ArcClass::CliqueIn);
    const auto s_in = col_of(ArcClass::LeafIn);
    for (std::size_t k = 0; k <= t_max; ++k) {
        if (k > 0) psi = (u * psi).eval();
        trace.rows.push_back(
            TraceRow{initial.time + k, std::norm(psi(k_in)) + std::norm(psi(s_in)), psi(k_in), psi(s_in)});
    }
    return trace;
}

} // namespace qwstar
