#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwstar/state.hpp"

namespace qwstar {

inline constexpr const char* kToolVersion = "0.1.0";

struct TraceRow {
    std::size_t t = 0;
    double p_vstar = 0.0;
    Complex psi_K_plus;
    Complex psi_S_plus;

    bool operator==(const TraceRow&) const = default;
};

struct TraceMetadata {
    std::size_t clique_size = 0;
    std::size_t leaf_count = 0;
    std::optional<double> alpha;
    std::string mode;
    LeafPhase leaf_phase = LeafPhase::reversal;
    std::string version = kToolVersion;

    bool operator==(const TraceMetadata&) const = default;
};

/// Success probability p_t(v*) over time, plus the two collapsed amplitudes
/// on the arcs into the hub that feed it.
struct ProbabilityTrace {
    TraceMetadata metadata;
    std::vector<TraceRow> rows;

    // Index of the first row with the largest p_vstar among rows [0, last].
    std::size_t argmax(std::size_t last) const;
    std::size_t argmax() const { return argmax(rows.empty() ? 0 : rows.size() - 1); }

    bool operator==(const ProbabilityTrace&) const = default;
};

// CSV layout: `# key=value` metadata lines, one header line, then rows
//   t,p_vstar,psi_K_plus_re,psi_K_plus_im,psi_S_plus_re,psi_S_plus_im
// with reals printed to 17 significant digits.
void write_csv(std::ostream& out, const ProbabilityTrace& trace);
ProbabilityTrace read_csv(std::istream& in);

// JSON mirrors the CSV: {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
void write_json(std::ostream& out, const ProbabilityTrace& trace);
ProbabilityTrace read_json(std::istream& in);

std::string format_real(double value);

} // namespace qwstar
