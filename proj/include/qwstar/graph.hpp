#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qwstar {

using VertexId = std::size_t;
using ArcId = std::size_t;

// Arc classes of K_N glued to S_m at the hub v*. The ordering is fixed and
// shared by every module: collapsed states index their five amplitudes by it.
enum class ArcClass : std::uint8_t {
    Interior = 0,  // both ends in the clique, neither is the hub
    CliqueIn = 1,  // clique vertex -> hub
    CliqueOut = 2, // hub -> clique vertex
    LeafIn = 3,    // leaf -> hub
    LeafOut = 4,   // hub -> leaf
};

inline constexpr std::size_t kArcClassCount = 5;

inline constexpr std::array<ArcClass, kArcClassCount> kArcClasses = {
    ArcClass::Interior, ArcClass::CliqueIn, ArcClass::CliqueOut,
    ArcClass::LeafIn, ArcClass::LeafOut};

constexpr std::size_t index_of(ArcClass c) noexcept { return static_cast<std::size_t>(c); }

// Class that `inverse` maps c into.
constexpr ArcClass reversed(ArcClass c) noexcept {
    switch (c) {
    case ArcClass::CliqueIn: return ArcClass::CliqueOut;
    case ArcClass::CliqueOut: return ArcClass::CliqueIn;
    case ArcClass::LeafIn: return ArcClass::LeafOut;
    case ArcClass::LeafOut: return ArcClass::LeafIn;
    case ArcClass::Interior: break;
    }
    return ArcClass::Interior;
}

std::string_view to_string(ArcClass c) noexcept;

struct Arc {
    VertexId origin;
    VertexId terminus;
    ArcId inverse;
    ArcClass cls;
};

/// Number of leaves generated by the exponent alpha, i.e. floor(N^alpha),
/// never less than one. Values of N^alpha within a few ulps of an integer
/// are snapped to it so that e.g. 10000^1.5 yields exactly 10^6.
std::size_t leaves_from_alpha(std::size_t clique_size, double alpha);

/// Sizes of the five arc classes, in ArcClass order.
std::array<std::size_t, kArcClassCount> class_sizes(std::size_t clique_size, std::size_t leaf_count);

/// Total arc count N(N-1) + 2m. Throws std::overflow_error if it does not fit in size_t.
std::size_t arc_count_for(std::size_t clique_size, std::size_t leaf_count);

/// The complete graph K_N with a star S_m glued at one clique vertex.
///
/// Vertex ids: the hub v* is 0, the remaining clique vertices are 1..N-1 and
/// the leaves are N..N+m-1. Arc ids: clique arcs first, origin-major and
/// terminus-minor, then the m arcs leaf -> hub, then the m arcs hub -> leaf.
/// Immutable once built.
class GluedGraph {
public:
    GluedGraph(std::size_t clique_size, std::size_t leaf_count);

    std::size_t clique_size() const noexcept { return clique_size_; }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t vertex_count() const noexcept { return clique_size_ + leaf_count_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }

    static constexpr VertexId hub() noexcept { return 0; }
    bool is_leaf(VertexId v) const noexcept { return v >= clique_size_ && v < vertex_count(); }

    const Arc& arc(ArcId a) const { return arcs_.at(a); }
    std::span<const Arc> arcs() const noexcept { return arcs_; }
    std::size_t degree(VertexId v) const { return degree_.at(v); }
    std::span<const std::size_t> degrees() const noexcept { return degree_; }

    // Id of the clique arc origin -> terminus (both < N, distinct).
    ArcId clique_arc(VertexId origin, VertexId terminus) const;
    ArcId leaf_in_arc(std::size_t leaf_index) const { return clique_size_ * (clique_size_ - 1) + leaf_index; }
    ArcId leaf_out_arc(std::size_t leaf_index) const { return leaf_in_arc(leaf_index) + leaf_count_; }

    // Class derived from endpoint membership alone, independent of the stored label.
    ArcClass classify(VertexId origin, VertexId terminus) const;

    std::array<std::size_t, kArcClassCount> class_sizes() const noexcept { return qwstar::class_sizes(clique_size_, leaf_count_); }

private:
    std::size_t clique_size_;
    std::size_t leaf_count_;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> degree_;
};

inline GluedGraph build_graph(std::size_t clique_size, std::size_t leaf_count) {
    return GluedGraph(clique_size, leaf_count);
}

} // namespace qwstar
