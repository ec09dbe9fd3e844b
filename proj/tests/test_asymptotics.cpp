#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qwstar/asymptotics.hpp"
#include "qwstar/collapsed_walk.hpp"
#include "qwstar/graph.hpp"
#include "qwstar/spectral.hpp"

using namespace qwstar;

namespace {

const std::vector<std::size_t> kPowersOfTwo = {256, 1024, 4096, 16384, 65536};

double collapsed_p(std::size_t n, std::size_t m, std::size_t t) {
    const auto trace =
        evolve_collapsed(build_reduced_operators(n, m, LeafPhase::reversal), collapsed_initial_state(n, m), t);
    return trace.rows.back().p_vstar;
}

} // namespace

TEST_CASE("regimes") {
    CHECK(AsymptoticRegime::from_alpha(0.0).branch == Branch::sub);
    CHECK(AsymptoticRegime::from_alpha(0.999).branch == Branch::sub);
    CHECK(AsymptoticRegime::from_alpha(1.0).branch == Branch::critical);
    CHECK(AsymptoticRegime::from_alpha(1.001).branch == Branch::super);
    CHECK(to_string(Branch::super) == "super");
    CHECK_THROWS_AS(AsymptoticRegime::from_alpha(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(AsymptoticRegime::from_alpha(NAN), std::invalid_argument);
}

TEST_CASE("theta_1 estimates") {
    CHECK(theta1_approx(100, 0.0) == doctest::Approx(0.014142).epsilon(1e-4));
    CHECK(theta1_approx(100, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(theta1_approx(100, 2.0) == doctest::Approx(std::sqrt(2.0) / 10.0).epsilon(1e-15));
    for (double alpha : {0.0, 0.5}) {
        const std::size_t n = 1000000;
        const double exact = discriminant_angles(n, leaves_from_alpha(n, alpha)).theta_1;
        CHECK(std::abs(theta1_approx(n, alpha) / exact - 1.0) < 0.01);
    }
}

TEST_CASE("1 - cos theta_1 estimate at large N") {
    const std::size_t n = 1000000;
    for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        CAPTURE(alpha);
        const double exact = discriminant_angles(n, leaves_from_alpha(n, alpha)).one_minus_cos_theta_1;
        CHECK(std::abs(exact / one_minus_cos_theta1_approx(n, alpha) - 1.0) < 0.02);
    }
}

TEST_CASE("coefficient estimates") {
    SUBCASE("sub branch c1") {
        const auto e = coefficient_estimates(1000000, 0.0, 0);
        CHECK(e.branch == Branch::sub);
        CHECK(e.c1_leading == doctest::Approx(1000.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(e.c1_leading == doctest::Approx(707.1).epsilon(1e-4));
        CHECK(std::abs(e.c1_exact / e.c1_leading - 1.0) < 0.01);
    }
    SUBCASE("critical branch k1 and s1 at the crest") {
        const std::size_t n = 1000000;
        const double theta = discriminant_angles(n, n).theta_1;
        const auto t = static_cast<std::size_t>(std::llround(std::numbers::pi / (2.0 * theta)));
        const auto e = coefficient_estimates(n, 1.0, t);
        CHECK(e.c1_leading == 1.0);
        CHECK(std::abs(e.k1_leading - 0.5) < 0.005);
        CHECK(std::abs(e.s1_leading - 0.5) < 0.005);
        CHECK(std::abs(e.k1_exact - 0.5) < 0.005);
        CHECK(std::abs(e.s1_exact - 0.5) < 0.005);
        CHECK(std::abs(e.c1_exact - 1.0) < 0.01);
    }
    SUBCASE("super branch remainders") {
        const auto e = coefficient_estimates(10000, 2.0, 157);
        CHECK(std::abs(e.R_K) < 0.1);
        CHECK(std::abs(e.R_S) < 1e-3);
        CHECK(e.c1_leading == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(e.s1_leading == 0.0);
    }
    SUBCASE("remainders shrink with N") {
        for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
            const auto small = coefficient_estimates(1000, alpha, 3);
            const auto large = coefficient_estimates(100000, alpha, 3);
            CHECK(std::abs(large.R_K) < std::abs(small.R_K));
            CHECK(large.c2k2_bound < small.c2k2_bound);
        }
    }
}

TEST_CASE("probability estimate") {
    for (double alpha : {0.0, 0.7, 1.0, 2.0}) CHECK(probability_approx(500, alpha, 0) == 0.0);
    CHECK(probability_approx(100, 0.0, 111) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("envelope against the collapsed walk") {
    const std::size_t n = 10000;
    for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
        CAPTURE(alpha);
        const std::size_t m = leaves_from_alpha(n, alpha);
        const std::size_t horizon = 10 * optimal_time_exact(n, m);
        const auto trace =
            evolve_collapsed(build_reduced_operators(n, m, LeafPhase::reversal), collapsed_initial_state(n, m), horizon);
        double worst = 0.0;
        for (const auto& row : trace.rows) worst = std::max(worst, std::abs(probability_approx(n, alpha, row.t) - row.p_vstar));
        CHECK(worst < 0.05);
    }
}

TEST_CASE("optimal times") {
    CHECK(optimal_time_exact(100, 1) == 111);
    CHECK(optimal_time_exact(100, 10) == 36);
    CHECK(optimal_time_exact(100, 100) == 15);
    CHECK(optimal_time_exact(10000, 1) == 11107);
    CHECK(optimal_time_branch(100, 0.0) == 111);
    CHECK(optimal_time_branch(100, 1.0) == 15);
    CHECK(optimal_time_branch(100, 2.0) == 11);

    for (std::size_t n : {100u, 400u, 1000u, 10000u})
        for (double alpha : {0.0, 1.0, 2.0}) {
            CAPTURE(n);
            CAPTURE(alpha);
            const auto exact = static_cast<long>(optimal_time_exact(n, leaves_from_alpha(n, alpha)));
            const auto branch = static_cast<long>(optimal_time_branch(n, alpha));
            CHECK(std::abs(exact - branch) <= 2);
        }
}

TEST_CASE("monotone transition and plateau") {
    const std::size_t n = 10000;
    std::vector<std::size_t> times;
    for (int k = 0; k <= 8; ++k) times.push_back(optimal_time_exact(n, leaves_from_alpha(n, 0.25 * k)));
    for (std::size_t k = 1; k < times.size(); ++k) CHECK(times[k] <= times[k - 1]);
    for (std::size_t k = 5; k < times.size(); ++k)
        CHECK(double(times[k]) / double(times.back()) >= 0.9);
}

TEST_CASE("success probability at the optimal time") {
    const std::size_t n = 10000;
    for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        CAPTURE(alpha);
        const std::size_t m = leaves_from_alpha(n, alpha);
        const double p = collapsed_p(n, m, optimal_time_exact(n, m));
        CHECK(p >= 0.45);
        CHECK(p <= 0.55);
    }
}

TEST_CASE("exponent fits") {
    const double expected[] = {1.0, 0.75, 0.5, 0.5, 0.5};
    const double alphas[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    for (int i = 0; i < 5; ++i) {
        CAPTURE(alphas[i]);
        const auto fit = exponent_fit(alphas[i], kPowersOfTwo);
        CHECK(fit.theory_exponent == expected[i]);
        CHECK(std::abs(fit.fitted_exponent - expected[i]) < 0.05);
        CHECK(fit.samples.size() == 5);
        CHECK(fit.fit_residual >= 0.0);
        for (std::size_t k = 1; k < fit.samples.size(); ++k) CHECK(fit.samples[k].first > fit.samples[k - 1].first);
    }
    CHECK(theory_exponent(0.4) == doctest::Approx(0.8));
    CHECK(theory_exponent(3.0) == 0.5);

    const std::vector<std::size_t> shuffled = {4096, 256, 65536, 256, 1024, 16384};
    CHECK(exponent_fit(0.0, shuffled).fitted_exponent == exponent_fit(0.0, kPowersOfTwo).fitted_exponent);

    const std::vector<std::size_t> degenerate = {1000, 1000};
    CHECK_THROWS_AS(exponent_fit(0.0, degenerate), std::invalid_argument);
}
