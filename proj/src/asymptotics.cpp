#include "qwstar/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwstar/graph.hpp"
#include "qwstar/spectral.hpp"

namespace qwstar {

std::string_view to_string(Branch b) noexcept {
    switch (b) {
    case Branch::sub: return "sub";
    case Branch::critical: return "critical";
    case Branch::super: return "super";
    }
    return "?";
}

AsymptoticRegime AsymptoticRegime::from_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and nonnegative");
    const Branch b = alpha < 1.0 ? Branch::sub : (alpha == 1.0 ? Branch::critical : Branch::super);
    return {alpha, b};
}

double one_minus_cos_theta1_approx(std::size_t clique_size, double alpha) {
    const auto regime = AsymptoticRegime::from_alpha(alpha);
    const double n = static_cast<double>(clique_size);
    switch (regime.branch) {
    case Branch::sub: return std::pow(n, alpha - 2.0);
    case Branch::critical: return 0.5 / n;
    case Branch::super: break;
    }
    return 1.0 / n;
}

double theta1_approx(std::size_t clique_size, double alpha) {
    const auto regime = AsymptoticRegime::from_alpha(alpha);
    const double n = static_cast<double>(clique_size);
    switch (regime.branch) {
    case Branch::sub: return std::numbers::sqrt2 * std::pow(n, (alpha - 2.0) / 2.0);
    case Branch::critical: return 1.0 / std::sqrt(n);
    case Branch::super: break;
    }
    return std::numbers::sqrt2 / std::sqrt(n);
}

CoefficientEstimates coefficient_estimates(std::size_t clique_size, double alpha, std::size_t t) {
    const auto regime = AsymptoticRegime::from_alpha(alpha);
    const std::size_t leaves = leaves_from_alpha(clique_size, alpha);
    const auto angles = discriminant_angles(clique_size, leaves);
    const auto exact = amplitude_coefficients(clique_size, leaves, t);
    const double n = static_cast<double>(clique_size);
    const double m = static_cast<double>(leaves);
    const double hub = n + m - 1.0;
    const double wave = std::sin(static_cast<double>(t) * angles.theta_1);

    CoefficientEstimates e;
    e.branch = regime.branch;
    switch (regime.branch) {
    case Branch::sub:
        e.c1_leading = std::pow(n, (1.0 - alpha) / 2.0) / std::numbers::sqrt2;
        e.k1_leading = std::pow(n, alpha - 1.0) * wave;
        e.s1_leading = std::pow(n, (alpha - 1.0) / 2.0) * wave;
        break;
    case Branch::critical:
        e.c1_leading = 1.0;
        e.k1_leading = 0.5 * wave;
        e.s1_leading = 0.5 * wave;
        break;
    case Branch::super:
        e.c1_leading = 1.0 / std::numbers::sqrt2;
        e.k1_leading = wave;
        e.s1_leading = 0.0;
        break;
    }
    e.c1_exact = exact.c1;
    e.k1_exact = exact.k1;
    e.s1_exact = exact.s1;
    e.c2k2_bound = std::abs(exact.c2) * (std::abs(angles.cos_theta_2) + (n - 1.0) / hub);
    e.c2s2_bound = std::abs(exact.c2) * std::sqrt(m * (n - 1.0)) / hub;
    e.R_K = exact.R_K;
    e.R_S = exact.R_S;
    return e;
}

double probability_approx(std::size_t clique_size, double alpha, std::size_t t) {
    const auto angles = discriminant_angles(clique_size, leaves_from_alpha(clique_size, alpha));
    const double s = std::sin(static_cast<double>(t) * angles.theta_1);
    return 0.5 * s * s;
}

std::size_t optimal_time_exact(std::size_t clique_size, std::size_t leaf_count) {
    const auto angles = discriminant_angles(clique_size, leaf_count);
    return static_cast<std::size_t>(std::floor(std::numbers::pi / (2.0 * angles.theta_1)));
}

std::size_t optimal_time_branch(std::size_t clique_size, double alpha) {
    const auto regime = AsymptoticRegime::from_alpha(alpha);
    (void)class_sizes(clique_size, 1);
    const double n = static_cast<double>(clique_size);
    constexpr double pi = std::numbers::pi;
    double value = 0.0;
    switch (regime.branch) {
    case Branch::sub: value = pi / (2.0 * std::numbers::sqrt2) * std::pow(n, (2.0 - alpha) / 2.0); break;
    case Branch::critical: value = pi / 2.0 * std::sqrt(n); break;
    case Branch::super: value = pi / (2.0 * std::numbers::sqrt2) * std::sqrt(n); break;
    }
    return static_cast<std::size_t>(std::floor(value));
}

double theory_exponent(double alpha) {
    const auto regime = AsymptoticRegime::from_alpha(alpha);
    return regime.alpha <= 1.0 ? (2.0 - regime.alpha) / 2.0 : 0.5;
}

ExponentFit exponent_fit(double alpha, std::span<const std::size_t> clique_sizes) {
    std::vector<std::size_t> ns(clique_sizes.begin(), clique_sizes.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.size() < 2) throw std::invalid_argument("exponent fit needs at least two distinct N");

    ExponentFit fit;
    fit.alpha = alpha;
    fit.theory_exponent = theory_exponent(alpha);
    std::vector<double> xs, ys;
    for (std::size_t n : ns) {
        const std::size_t t_opt = optimal_time_exact(n, leaves_from_alpha(n, alpha));
        if (t_opt == 0) throw std::invalid_argument("optimal time is zero at N=" + std::to_string(n));
        fit.samples.emplace_back(n, t_opt);
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(static_cast<double>(t_opt)));
    }

    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.fitted_exponent = sxy / sxx;
    fit.intercept = my - fit.fitted_exponent * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.fitted_exponent * xs[i]);
        ss += r * r;
    }
    fit.fit_residual = std::sqrt(ss / k);
    return fit;
}

} // namespace qwstar
