#include "qwstar/graph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qwstar {

namespace {

void require_valid(std::size_t clique_size, std::size_t leaf_count) {
    if (clique_size < 3)
        throw std::invalid_argument("clique size must be at least 3, got " + std::to_string(clique_size));
    if (leaf_count < 1)
        throw std::invalid_argument("leaf count must be at least 1");
}

} // namespace

std::string_view to_string(ArcClass c) noexcept {
    switch (c) {
    case ArcClass::Interior: return "A0";
    case ArcClass::CliqueIn: return "AK+";
    case ArcClass::CliqueOut: return "AK-";
    case ArcClass::LeafIn: return "AS+";
    case ArcClass::LeafOut: return "AS-";
    }
    return "?";
}

std::size_t leaves_from_alpha(std::size_t clique_size, double alpha) {
    if (clique_size < 3)
        throw std::invalid_argument("clique size must be at least 3, got " + std::to_string(clique_size));
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be a finite nonnegative number");

    const double raw = std::pow(static_cast<double>(clique_size), alpha);
    if (!(raw < static_cast<double>(std::numeric_limits<std::size_t>::max())))
        throw std::overflow_error("N^alpha does not fit in size_t");
    const double nearest = std::round(raw);
    const double snapped =
        std::abs(raw - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * nearest ? nearest : std::floor(raw);
    const auto m = static_cast<std::size_t>(snapped);
    return m < 1 ? 1 : m;
}

std::array<std::size_t, kArcClassCount> class_sizes(std::size_t clique_size, std::size_t leaf_count) {
    require_valid(clique_size, leaf_count);
    const std::size_t n = clique_size;
    return {(n - 1) * (n - 2), n - 1, n - 1, leaf_count, leaf_count};
}

std::size_t arc_count_for(std::size_t clique_size, std::size_t leaf_count) {
    require_valid(clique_size, leaf_count);
    std::size_t clique_arcs = 0;
    std::size_t star_arcs = 0;
    std::size_t total = 0;
    if (__builtin_mul_overflow(clique_size, clique_size - 1, &clique_arcs) ||
        __builtin_mul_overflow(leaf_count, std::size_t{2}, &star_arcs) ||
        __builtin_add_overflow(clique_arcs, star_arcs, &total))
        throw std::overflow_error("arc count N(N-1)+2m overflows size_t");
    return total;
}

GluedGraph::GluedGraph(std::size_t clique_size, std::size_t leaf_count)
    : clique_size_(clique_size), leaf_count_(leaf_count) {
    const std::size_t total = arc_count_for(clique_size, leaf_count);
    if (total > arcs_.max_size() || vertex_count() < clique_size_)
        throw std::length_error("arc table exceeds addressable size");

    const std::size_t n = clique_size_;
    arcs_.resize(total);
    degree_.assign(n + leaf_count_, n - 1);
    degree_[hub()] += leaf_count_;
    for (std::size_t j = 0; j < leaf_count_; ++j) degree_[n + j] = 1;

    for (VertexId o = 0; o < n; ++o) {
        for (VertexId t = 0; t < n; ++t) {
            if (t == o) continue;
            const ArcId a = clique_arc(o, t);
            arcs_[a] = Arc{o, t, clique_arc(t, o), classify(o, t)};
        }
    }
    for (std::size_t j = 0; j < leaf_count_; ++j) {
        const VertexId leaf = n + j;
        arcs_[leaf_in_arc(j)] = Arc{leaf, hub(), leaf_out_arc(j), ArcClass::LeafIn};
        arcs_[leaf_out_arc(j)] = Arc{hub(), leaf, leaf_in_arc(j), ArcClass::LeafOut};
    }
}

ArcId GluedGraph::clique_arc(VertexId origin, VertexId terminus) const {
    if (origin >= clique_size_ || terminus >= clique_size_ || origin == terminus)
        throw std::out_of_range("not a clique arc");
    return origin * (clique_size_ - 1) + (terminus < origin ? terminus : terminus - 1);
}

ArcClass GluedGraph::classify(VertexId origin, VertexId terminus) const {
    const auto in_rest = [this](VertexId v) { return v != hub() && v < clique_size_; };
    if (in_rest(origin) && in_rest(terminus)) return ArcClass::Interior;
    if (in_rest(origin) && terminus == hub()) return ArcClass::CliqueIn;
    if (origin == hub() && in_rest(terminus)) return ArcClass::CliqueOut;
    if (is_leaf(origin) && terminus == hub()) return ArcClass::LeafIn;
    if (origin == hub() && is_leaf(terminus)) return ArcClass::LeafOut;
    throw std::out_of_range("vertex pair is not an arc of the glued graph");
}

} // namespace qwstar
