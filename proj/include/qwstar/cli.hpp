#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwstar/state.hpp"

namespace qwstar::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kConfigError = 2,
    kResourceBudget = 3,
};

enum class Command { simulate, spectrum, optimal_time, phase_diagram, verify };
enum class Mode { full, collapsed, closed, asymptotic };
enum class Format { csv, json };

// Environment variable naming the directory used when --out is not given.
inline constexpr const char* kOutputDirEnv = "QWSTAR_OUTPUT_DIR";
inline constexpr std::size_t kDefaultArcBudget = 10'000'000;

struct VerifyTolerances {
    double equivalence = 1e-10;  // full vs collapsed vs reference, per step
    double commutation = 1e-12;  // |U P psi - P U psi|
    double unitarity = 1e-12;    // | |U psi| - |psi| |
    double residual = 1e-10;     // spectral residuals and eigenvalue match
    double conjugation = 1e-13;  // closed-form U0 vs U conjugated by the class map
};

struct RunConfig {
    Command command = Command::simulate;
    std::size_t clique_size = 0;
    std::optional<double> alpha;
    std::optional<std::size_t> leaf_count;
    std::size_t steps = 200;
    Mode mode = Mode::collapsed;
    LeafPhase leaf_phase = LeafPhase::reversal;
    std::optional<std::filesystem::path> out;
    Format format = Format::csv;
    std::uint64_t seed = 0;
    std::size_t arc_budget = kDefaultArcBudget;

    std::vector<double> alphas;           // phase-diagram grid
    std::vector<std::size_t> clique_grid; // phase-diagram grid

    VerifyTolerances tolerances;
    std::size_t random_states = 100;
    // Test hook: the full evaluator runs with the opposite leaf phase.
    bool inject_leaf_sign_flip = false;

    std::size_t resolved_leaf_count() const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError or BudgetError; never touches the filesystem.
void validate(const RunConfig& config);

// Each runner validates, computes, then writes the result to config.out
// (write-then-rename), to $QWSTAR_OUTPUT_DIR/<default name>, or to `out`.
int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_optimal_time(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_phase_diagram(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qwstar::cli
