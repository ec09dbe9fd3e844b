#include "qwstar/checks.hpp"

#include <algorithm>
#include <cmath>

#include "qwstar/full_walk.hpp"

namespace qwstar {

namespace {

double distance(const WalkState& a, const WalkState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) s += std::norm(a.amplitudes[i] - b.amplitudes[i]);
    return std::sqrt(s);
}

template <class Apply>
Matrix5 conjugate(const GluedGraph& graph, Apply&& apply) {
    Matrix5 out;
    for (std::size_t j = 0; j < kArcClassCount; ++j) {
        CollapsedState basis;
        basis.amplitudes[j] = 1.0;
        const CollapsedState image = collapse(graph, apply(lift(graph, basis)));
        for (std::size_t i = 0; i < kArcClassCount; ++i)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = image.amplitudes[i].real();
    }
    return out;
}

} // namespace

WalkState random_state(const GluedGraph& graph, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    WalkState s;
    s.amplitudes.resize(graph.arc_count());
    for (auto& z : s.amplitudes) z = Complex(gauss(rng), gauss(rng));
    const double norm = s.norm();
    for (auto& z : s.amplitudes) z /= norm;
    return s;
}

double commutation_defect(const GluedGraph& graph, LeafPhase phase, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const WalkState psi = random_state(graph, rng);
        const WalkState a = step(graph, project(graph, psi), phase);
        const WalkState b = project(graph, step(graph, psi, phase));
        worst = std::max(worst, distance(a, b));
    }
    return worst;
}

double unitarity_defect(const GluedGraph& graph, LeafPhase phase, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const WalkState psi = random_state(graph, rng);
        worst = std::max(worst, std::abs(step(graph, psi, phase).norm() - 1.0));
    }
    return worst;
}

Matrix5 conjugated_evolution(const GluedGraph& graph, LeafPhase phase) {
    return conjugate(graph, [&](const WalkState& s) { return step(graph, s, phase); });
}

Matrix5 conjugated_shift(const GluedGraph& graph) {
    return conjugate(graph, [&](const WalkState& s) {
        WalkState out;
        out.amplitudes = apply_shift(graph, s.amplitudes);
        return out;
    });
}

} // namespace qwstar
