#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qwstar/graph.hpp"

namespace qwstar {

using Complex = std::complex<double>;

// Sign picked up by amplitude reflected at a leaf.
//   reversal: leaves are outside the coin's support, the reflection is -1.
//   plain:    leaves carry the degree-one Grover coin, the reflection is +1.
enum class LeafPhase { reversal, plain };

std::string_view to_string(LeafPhase phase) noexcept;

/// One amplitude per arc of a GluedGraph.
struct WalkState {
    std::vector<Complex> amplitudes;
    std::size_t time = 0;

    double norm_squared() const noexcept;
    double norm() const noexcept;
};

/// Amplitudes on the class-uniform subspace, indexed by ArcClass.
struct CollapsedState {
    std::array<Complex, kArcClassCount> amplitudes{};
    std::size_t time = 0;

    Complex& operator[](ArcClass c) noexcept { return amplitudes[index_of(c)]; }
    const Complex& operator[](ArcClass c) const noexcept { return amplitudes[index_of(c)]; }

    double norm_squared() const noexcept;
};

} // namespace qwstar
