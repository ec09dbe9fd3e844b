#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qwstar {

// Large-N regime of the leaf exponent alpha, with m = floor(N^alpha).
enum class Branch { sub, critical, super };

std::string_view to_string(Branch b) noexcept;

struct AsymptoticRegime {
    double alpha = 0.0;
    Branch branch = Branch::sub;

    // Throws std::invalid_argument for negative or non-finite alpha.
    static AsymptoticRegime from_alpha(double alpha);
};

/// Leading-order estimate of 1 - cos(theta_1): N^{alpha-2}, N^{-1}/2, N^{-1}.
double one_minus_cos_theta1_approx(std::size_t clique_size, double alpha);

/// Leading-order theta_1: sqrt2 N^{(alpha-2)/2}, N^{-1/2}, sqrt2 N^{-1/2}.
double theta1_approx(std::size_t clique_size, double alpha);

struct CoefficientEstimates {
    Branch branch = Branch::sub;
    // Leading terms; k1 and s1 include their sin(t theta_1) factor (exact theta_1).
    double c1_leading = 0.0;
    double k1_leading = 0.0;
    double s1_leading = 0.0;
    // Exact values of the same coefficients at (N, m = floor(N^alpha), t).
    double c1_exact = 0.0;
    double k1_exact = 0.0;
    double s1_exact = 0.0;
    // Magnitude bounds of the remainder terms, from exact spectral quantities.
    double c2k2_bound = 0.0;
    double c2s2_bound = 0.0;
    double R_K = 0.0;
    double R_S = 0.0;
};

CoefficientEstimates coefficient_estimates(std::size_t clique_size, double alpha, std::size_t t);

/// (1/2) sin^2(t theta_1) with theta_1 exact at m = floor(N^alpha).
double probability_approx(std::size_t clique_size, double alpha, std::size_t t);

/// floor(pi / (2 theta_1)) with theta_1 exact.
std::size_t optimal_time_exact(std::size_t clique_size, std::size_t leaf_count);

/// Three-branch closed form: floor(pi/(2 sqrt2) N^{(2-alpha)/2}), floor(pi/2 sqrt N), floor(pi/(2 sqrt2) sqrt N).
std::size_t optimal_time_branch(std::size_t clique_size, double alpha);

/// Scaling exponent of t_opt: (2 - alpha)/2 for alpha <= 1, otherwise 1/2.
double theory_exponent(double alpha);

struct ExponentFit {
    double alpha = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> samples; // (N, t_opt exact), increasing N
    double fitted_exponent = 0.0; // least-squares slope of log t_opt against log N
    double intercept = 0.0;
    double fit_residual = 0.0; // RMS of the log-space residuals
    double theory_exponent = 0.0;

    double deviation() const { return fitted_exponent - theory_exponent; }
};

/// Throws std::invalid_argument if fewer than two distinct N are given.
ExponentFit exponent_fit(double alpha, std::span<const std::size_t> clique_sizes);

} // namespace qwstar
