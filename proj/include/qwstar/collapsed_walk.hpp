#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qwstar/state.hpp"
#include "qwstar/trace.hpp"

namespace qwstar {

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Matrix3x5 = Eigen::Matrix<double, 3, 5>;
using Matrix3 = Eigen::Matrix3d;
using Vector5c = Eigen::Matrix<Complex, 5, 1>;

// Rows of the reduced boundary operator.
enum class VertexClass : std::size_t {
    CliqueRest = 0, // clique vertices other than the hub
    Leaves = 1,
    Hub = 2,
};

constexpr Eigen::Index row_of(VertexClass c) noexcept { return static_cast<Eigen::Index>(c); }
constexpr Eigen::Index col_of(ArcClass c) noexcept { return static_cast<Eigen::Index>(index_of(c)); }

/// The walk restricted to class-uniform states. Columns and rows follow
/// ArcClass order; boundary rows follow VertexClass order.
struct ReducedOperators {
    std::size_t clique_size = 0;
    std::size_t leaf_count = 0;
    LeafPhase phase = LeafPhase::reversal;

    Matrix5 shift;        // S0, an involution
    Matrix3x5 boundary;   // reduced d; rows with no coin support are zero
    Matrix5 evolution;    // U0 = S0 (2 boundary^T boundary - I)
    Matrix3 discriminant; // T = boundary S0 boundary^T
};

/// Entries come from closed forms, not from conjugating the full operator.
ReducedOperators build_reduced_operators(std::size_t clique_size, std::size_t leaf_count, LeafPhase phase);

/// (sqrt((N-2)/N), 1/sqrt(N), 1/sqrt(N), 0, 0).
CollapsedState collapsed_initial_state(std::size_t clique_size, std::size_t leaf_count);

Vector5c to_vector(const CollapsedState& state);
CollapsedState from_vector(const Vector5c& v, std::size_t time = 0);

CollapsedState step(const ReducedOperators& ops, const CollapsedState& state);

/// |Psi(AK+)|^2 + |Psi(AS+)|^2.
double success_probability(const CollapsedState& state) noexcept;

ProbabilityTrace evolve_collapsed(const ReducedOperators& ops, const CollapsedState& initial, std::size_t t_max);

} // namespace qwstar
