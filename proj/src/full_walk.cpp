#include "qwstar/full_walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwstar {

namespace {

void require_dimension(const GluedGraph& graph, std::size_t size) {
    if (size != graph.arc_count())
        throw std::invalid_argument("state has " + std::to_string(size) + " amplitudes, graph has " +
                                    std::to_string(graph.arc_count()) + " arcs");
}

bool in_coin_support(const GluedGraph& graph, VertexId v, LeafPhase phase) {
    return phase == LeafPhase::plain || !graph.is_leaf(v);
}

// out = U in, using `incoming` as scratch for the per-vertex sums.
void apply_walk(const GluedGraph& graph, std::span<const Complex> in, std::span<Complex> out,
                std::vector<Complex>& incoming, LeafPhase phase) {
    incoming.assign(graph.vertex_count(), Complex{});
    const auto arcs = graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) incoming[arcs[a].terminus] += in[a];

    const auto degrees = graph.degrees();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const VertexId v = arcs[a].origin;
        const Complex back = in[arcs[a].inverse];
        if (in_coin_support(graph, v, phase))
            out[a] = (2.0 / static_cast<double>(degrees[v])) * incoming[v] - back;
        else
            out[a] = -back;
    }
}

} // namespace

std::string_view to_string(LeafPhase phase) noexcept {
    return phase == LeafPhase::reversal ? "reverse" : "plain";
}

double WalkState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& z : amplitudes) s += std::norm(z);
    return s;
}

double WalkState::norm() const noexcept { return std::sqrt(norm_squared()); }

double CollapsedState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& z : amplitudes) s += std::norm(z);
    return s;
}

WalkState initial_state(const GluedGraph& graph) {
    const std::size_t n = graph.clique_size();
    const double amp = 1.0 / std::sqrt(static_cast<double>(n * (n - 1)));
    WalkState state;
    state.amplitudes.assign(graph.arc_count(), Complex{});
    for (std::size_t a = 0; a < n * (n - 1); ++a) state.amplitudes[a] = amp;
    return state;
}

std::vector<Complex> apply_shift(const GluedGraph& graph, std::span<const Complex> amplitudes) {
    require_dimension(graph, amplitudes.size());
    std::vector<Complex> out(amplitudes.size());
    const auto arcs = graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) out[a] = amplitudes[arcs[a].inverse];
    return out;
}

std::vector<Complex> apply_coin(const GluedGraph& graph, std::span<const Complex> amplitudes, LeafPhase phase) {
    require_dimension(graph, amplitudes.size());
    std::vector<Complex> incoming(graph.vertex_count());
    const auto arcs = graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) incoming[arcs[a].terminus] += amplitudes[a];

    std::vector<Complex> out(amplitudes.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const VertexId v = arcs[a].terminus;
        if (in_coin_support(graph, v, phase))
            out[a] = (2.0 / static_cast<double>(graph.degree(v))) * incoming[v] - amplitudes[a];
        else
            out[a] = -amplitudes[a];
    }
    return out;
}

WalkState step(const GluedGraph& graph, const WalkState& state, LeafPhase phase) {
    require_dimension(graph, state.amplitudes.size());
    WalkState next;
    next.amplitudes.resize(state.amplitudes.size());
    next.time = state.time + 1;
    std::vector<Complex> incoming;
    apply_walk(graph, state.amplitudes, next.amplitudes, incoming, phase);
    return next;
}

double vertex_probability(const GluedGraph& graph, const WalkState& state, VertexId v) {
    require_dimension(graph, state.amplitudes.size());
    if (v >= graph.vertex_count()) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    const std::size_t n = graph.clique_size();
    double p = 0.0;
    if (graph.is_leaf(v)) return std::norm(state.amplitudes[graph.leaf_out_arc(v - n)]);
    for (VertexId o = 0; o < n; ++o)
        if (o != v) p += std::norm(state.amplitudes[graph.clique_arc(o, v)]);
    if (v == GluedGraph::hub())
        for (std::size_t j = 0; j < graph.leaf_count(); ++j) p += std::norm(state.amplitudes[graph.leaf_in_arc(j)]);
    return p;
}

CollapsedState collapse(const GluedGraph& graph, const WalkState& state) {
    require_dimension(graph, state.amplitudes.size());
    // Neumaier summation: class sums run over up to N^2 arcs.
    struct Accumulator {
        double sum = 0.0, carry = 0.0;
        void add(double x) {
            const double t = sum + x;
            carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
        double value() const { return sum + carry; }
    };
    std::array<Accumulator, kArcClassCount> re{}, im{};
    const auto arcs = graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const auto k = index_of(arcs[a].cls);
        re[k].add(state.amplitudes[a].real());
        im[k].add(state.amplitudes[a].imag());
    }

    const auto sizes = graph.class_sizes();
    CollapsedState out;
    out.time = state.time;
    for (std::size_t k = 0; k < kArcClassCount; ++k)
        out.amplitudes[k] = Complex(re[k].value(), im[k].value()) / std::sqrt(static_cast<double>(sizes[k]));
    return out;
}

WalkState lift(const GluedGraph& graph, const CollapsedState& collapsed) {
    const auto sizes = graph.class_sizes();
    std::array<Complex, kArcClassCount> per_arc{};
    for (std::size_t k = 0; k < kArcClassCount; ++k)
        per_arc[k] = collapsed.amplitudes[k] / std::sqrt(static_cast<double>(sizes[k]));

    WalkState out;
    out.time = collapsed.time;
    out.amplitudes.resize(graph.arc_count());
    const auto arcs = graph.arcs();
    for (std::size_t a = 0; a < arcs.size(); ++a) out.amplitudes[a] = per_arc[index_of(arcs[a].cls)];
    return out;
}

WalkState project(const GluedGraph& graph, const WalkState& state) { return lift(graph, collapse(graph, state)); }

ProbabilityTrace evolve(const GluedGraph& graph, const WalkState& state, std::size_t t_max, LeafPhase phase) {
    require_dimension(graph, state.amplitudes.size());
    const std::size_t n = graph.clique_size();
    const std::size_t m = graph.leaf_count();
    const double clique_scale = 1.0 / std::sqrt(static_cast<double>(n - 1));
    const double leaf_scale = 1.0 / std::sqrt(static_cast<double>(m));

    ProbabilityTrace trace;
    trace.metadata.clique_size = n;
    trace.metadata.leaf_count = m;
    trace.metadata.mode = "full";
    trace.metadata.leaf_phase = phase;
    trace.rows.reserve(t_max + 1);

    const auto record = [&](std::span<const Complex> psi, std::size_t t) {
        Complex clique_sum{}, leaf_sum{};
        double p = 0.0;
        for (VertexId o = 1; o < n; ++o) {
            const Complex z = psi[graph.clique_arc(o, GluedGraph::hub())];
            clique_sum += z;
            p += std::norm(z);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const Complex z = psi[graph.leaf_in_arc(j)];
            leaf_sum += z;
            p += std::norm(z);
        }
        trace.rows.push_back(TraceRow{t, p, clique_sum * clique_scale, leaf_sum * leaf_scale});
    };

    std::vector<Complex> current = state.amplitudes;
    std::vector<Complex> next(current.size());
    std::vector<Complex> incoming;
    record(current, state.time);
    for (std::size_t k = 1; k <= t_max; ++k) {
        apply_walk(graph, current, next, incoming, phase);
        current.swap(next);
        record(current, state.time + k);
    }
    return trace;
}

} // namespace qwstar
