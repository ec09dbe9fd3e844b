#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwstar/collapsed_walk.hpp"

namespace qwstar {

// Closed-form spectral description of the reduced walk in leaf-reversal mode,
// together with a reference evaluator built from a numeric eigendecomposition
// of U0. The reference is authoritative; the closed forms are checked against
// it component by component.

/// Roots cos(theta_1) > cos(theta_2) of the discriminant T on the support of
/// the boundary, i.e. of x^2 - (N-2)/(N-1) x - 1/(N+m-1).
struct DiscriminantAngles {
    double cos_theta_1 = 0.0;
    double cos_theta_2 = 0.0;
    double theta_1 = 0.0;
    double theta_2 = 0.0;
    // 1 - cos(theta_1) evaluated without cancellation; theta_1 ~ 1/N for few leaves.
    double one_minus_cos_theta_1 = 0.0;

    double sin_theta_1() const;
    double sin_theta_2() const;
};

DiscriminantAngles discriminant_angles(std::size_t clique_size, std::size_t leaf_count);

struct DiscriminantEigenvectors {
    Eigen::Vector3d f1; // eigenvector for cos(theta_1), VertexClass order
    Eigen::Vector3d f2;
    double alpha_1_sq = 0.0; // squared norm of the unnormalized (cos, 0, 1/sqrt(N+m-1))
    double alpha_2_sq = 0.0;
};

DiscriminantEigenvectors t_eigenvectors(std::size_t clique_size, std::size_t leaf_count);

enum class EigenLabel : std::size_t { plus_theta_1 = 0, minus_theta_1, plus_theta_2, minus_theta_2, minus_one };
inline constexpr std::array<EigenLabel, 5> kEigenLabels = {EigenLabel::plus_theta_1, EigenLabel::minus_theta_1,
                                                           EigenLabel::plus_theta_2, EigenLabel::minus_theta_2,
                                                           EigenLabel::minus_one};
std::string to_string(EigenLabel label);

struct Eigenpair {
    Complex value;
    Vector5c vector;
    double residual = 0.0; // |U0 v - value v|
};

/// Which labeling of the arcs the closed-form eigenvectors are written in.
///   walk:     U0 = S0 (2 d* d - I), the operator the simulators apply.
///   reversed: S0 U0 S0, the same walk with every arc replaced by its inverse.
/// The printed vectors for e^{+-i theta_x} are eigenvectors of the reversed
/// operator; applying S0 maps them to eigenvectors of U0.
enum class Labeling { walk, reversed };

/// Closed-form eigenvector in the requested labeling. The
/// -1 eigenvector is S0-symmetric, so both labelings coincide there.
/// `beta_sq` overrides the normalization of the -1 eigenvector when given.
Vector5c closed_form_eigenvector(std::size_t clique_size, std::size_t leaf_count, EigenLabel label,
                                 Labeling labeling = Labeling::walk, double beta_sq = 0.0);

/// Squared norm of the unnormalized -1 eigenvector
/// (-1, sqrt(N-2), sqrt(N-2), -sqrt((N-1)(N-2)/m), -sqrt((N-1)(N-2)/m)),
/// i.e. 1 + 2(N-2) + 2(N-1)(N-2)/m.
double beta_sq_exact(std::size_t clique_size, std::size_t leaf_count);

/// The expansion 1 + 2(N-1) + 2(N-1)(N-2)/m found in the asymptotic analysis;
/// it does not normalize the -1 eigenvector.
double beta_sq_expansion(std::size_t clique_size, std::size_t leaf_count);

struct AuditEntry {
    std::string item;
    std::string component;
    double deviation = 0.0; // relative to the scale of the reference quantity
    bool flagged = false;
};

inline constexpr double kAuditThreshold = 1e-8;
inline constexpr double kResidualTolerance = 1e-10;

struct SpectrumReport {
    std::size_t clique_size = 0;
    std::size_t leaf_count = 0;
    DiscriminantAngles angles;
    double alpha_1_sq = 0.0;
    double alpha_2_sq = 0.0;
    double beta_sq = 0.0;           // exact norm, used everywhere downstream
    double beta_sq_expansion = 0.0; // reported for comparison only

    // In kEigenLabels order. Closed-form vectors in the walk labeling, or the
    // numeric ones if any closed-form residual exceeded kResidualTolerance.
    std::array<Eigenpair, 5> eigenpairs;
    std::array<Eigenpair, 5> numeric;
    bool closed_form_valid = true;
    double orthonormality_defect = 0.0; // max |<v_i, v_j> - delta_ij| over eigenpairs
    double max_eigenvalue_mismatch = 0.0; // numeric eigenvalues vs {e^{+-i theta_x}, -1}

    std::vector<AuditEntry> audit;

    double max_residual() const;
};

/// Eigensystem of U0 in leaf-reversal mode, with the closed forms audited
/// against a numeric diagonalization.
SpectrumReport u_eigensystem(std::size_t clique_size, std::size_t leaf_count);

/// Smallest over matchings of the max distance between two eigenvalue lists.
double eigenvalue_mismatch(const std::array<Complex, 5>& a, const std::array<Complex, 5>& b);

struct AmplitudeCoefficients {
    double c1 = 0.0, c2 = 0.0;
    double k1 = 0.0, k2 = 0.0;
    double s1 = 0.0, s2 = 0.0;
    double R_K = 0.0, R_S = 0.0;
};

struct AmplitudePair {
    Complex psi_K_plus;
    Complex psi_S_plus;
    AmplitudeCoefficients coefficients;

    double probability() const { return std::norm(psi_K_plus) + std::norm(psi_S_plus); }
};

AmplitudeCoefficients amplitude_coefficients(std::size_t clique_size, std::size_t leaf_count, std::size_t t,
                                             double beta_sq = 0.0);

/// The explicit two-line amplitude formula
///   K = sum_x c_x k_x + (-1)^t R_K,   S = -sum_x c_x s_x + (-1)^{t+1} R_S.
/// Its squared sum equals p_t(v*). Componentwise it equals minus the
/// amplitudes on the arcs leaving the hub one step later,
/// -(Psi_{t+1}(AK-), Psi_{t+1}(AS-)), i.e. the arc-reversed labeling.
/// beta_sq = 0 selects beta_sq_exact.
AmplitudePair closed_form_amplitudes(std::size_t clique_size, std::size_t leaf_count, std::size_t t,
                                     double beta_sq = 0.0);

/// Reference evaluator: expands Psi_0 in the numerically computed
/// eigenvectors of U0, advances the phases and recombines.
class SpectralPropagator {
public:
    SpectralPropagator(std::size_t clique_size, std::size_t leaf_count);

    std::size_t clique_size() const noexcept { return clique_size_; }
    std::size_t leaf_count() const noexcept { return leaf_count_; }

    Vector5c state_at(std::size_t t) const;
    // Contribution of the eigenvalue nearest -1 to state_at(t).
    Vector5c parity_part_at(std::size_t t) const;
    AmplitudePair amplitudes(std::size_t t) const;
    double probability(std::size_t t) const;

    const std::array<Complex, 5>& eigenvalues() const noexcept { return values_; }
    const Eigen::Matrix<Complex, 5, 5>& eigenvectors() const noexcept { return vectors_; }
    // Expansion coefficients of Psi_0.
    const Vector5c& weights() const noexcept { return weights_; }

private:
    std::size_t clique_size_;
    std::size_t leaf_count_;
    std::array<Complex, 5> values_;
    std::array<double, 5> phases_;
    Eigen::Matrix<Complex, 5, 5> vectors_;
    Vector5c weights_;
    std::size_t parity_index_ = 0;
};

AmplitudePair reference_amplitudes(std::size_t clique_size, std::size_t leaf_count, std::size_t t);

/// p_t(v*) from the reference evaluator.
double closed_form_probability(std::size_t clique_size, std::size_t leaf_count, std::size_t t);

/// Trace of the reference evaluator; mode "closed".
ProbabilityTrace evolve_closed(std::size_t clique_size, std::size_t leaf_count, std::size_t t_max);

/// Compares the amplitude formula against the reference over t <= t_max.
std::vector<AuditEntry> audit_amplitude_formula(std::size_t clique_size, std::size_t leaf_count, std::size_t t_max);

} // namespace qwstar
