#include "qwstar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qwstar {

namespace {

using Matrix5c = Eigen::Matrix<Complex, 5, 5>;

struct Params {
    double n;
    double m;
    double hub_degree; // N + m - 1
};

Params params(std::size_t clique_size, std::size_t leaf_count) {
    (void)class_sizes(clique_size, leaf_count);
    const double n = static_cast<double>(clique_size);
    const double m = static_cast<double>(leaf_count);
    return {n, m, n + m - 1.0};
}

Complex expected_eigenvalue(const DiscriminantAngles& a, EigenLabel label) {
    switch (label) {
    case EigenLabel::plus_theta_1: return {a.cos_theta_1, a.sin_theta_1()};
    case EigenLabel::minus_theta_1: return {a.cos_theta_1, -a.sin_theta_1()};
    case EigenLabel::plus_theta_2: return {a.cos_theta_2, a.sin_theta_2()};
    case EigenLabel::minus_theta_2: return {a.cos_theta_2, -a.sin_theta_2()};
    case EigenLabel::minus_one: break;
    }
    return {-1.0, 0.0};
}

double residual(const Matrix5& u, const Complex& value, const Vector5c& v) {
    return (u.cast<Complex>() * v - value * v).norm();
}

// Aligns the global phase of `candidate` to `reference`.
Vector5c phase_aligned(const Vector5c& reference, const Vector5c& candidate) {
    const Complex overlap = candidate.dot(reference); // <candidate, reference>
    if (std::abs(overlap) < 1e-300) return reference;
    return reference * (std::conj(overlap) / std::abs(overlap));
}

void audit_vector(std::vector<AuditEntry>& out, const std::string& item, const Vector5c& formula,
                  const Vector5c& reference) {
    const Vector5c aligned = phase_aligned(reference, formula);
    const double scale = std::max(reference.norm(), std::numeric_limits<double>::min());
    for (std::size_t k = 0; k < kArcClassCount; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        const double dev = std::abs(formula(i) - aligned(i)) / scale;
        out.push_back({item, std::string(to_string(kArcClasses[k])), dev, dev > kAuditThreshold});
    }
}

std::array<std::size_t, 5> best_matching(const std::array<Complex, 5>& a, const std::array<Complex, 5>& b,
                                         double* mismatch) {
    std::array<std::size_t, 5> perm{0, 1, 2, 3, 4};
    std::array<std::size_t, 5> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < 5; ++i) cost = std::max(cost, std::abs(a[i] - b[perm[i]]));
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (mismatch) *mismatch = best_cost;
    return best;
}

} // namespace

double DiscriminantAngles::sin_theta_1() const { return std::sqrt(one_minus_cos_theta_1 * (2.0 - one_minus_cos_theta_1)); }
double DiscriminantAngles::sin_theta_2() const { return std::sqrt((1.0 - cos_theta_2) * (1.0 + cos_theta_2)); }

DiscriminantAngles discriminant_angles(std::size_t clique_size, std::size_t leaf_count) {
    const auto [n, m, hub] = params(clique_size, leaf_count);
    // N^2 - 4m + 4m^2/(N+m-1), with the last two terms combined to avoid
    // cancellation when m >> N.
    const double disc = n * n - 4.0 * m * (n - 1.0) / hub;
    if (!(disc >= 0.0)) throw std::runtime_error("negative discriminant; parameters corrupted");
    const double root = std::sqrt(disc);

    DiscriminantAngles a;
    a.one_minus_cos_theta_1 = 2.0 * m / (hub * (n + root));
    a.cos_theta_1 = 1.0 - a.one_minus_cos_theta_1;
    a.cos_theta_2 = -2.0 * (n - 1.0) / (hub * ((n - 2.0) + root));
    a.theta_1 = 2.0 * std::asin(std::sqrt(a.one_minus_cos_theta_1 / 2.0));
    a.theta_2 = std::acos(a.cos_theta_2);
    return a;
}

DiscriminantEigenvectors t_eigenvectors(std::size_t clique_size, std::size_t leaf_count) {
    const auto p = params(clique_size, leaf_count);
    const auto a = discriminant_angles(clique_size, leaf_count);
    const double hub_part = 1.0 / std::sqrt(p.hub_degree);

    DiscriminantEigenvectors out;
    out.alpha_1_sq = a.cos_theta_1 * a.cos_theta_1 + 1.0 / p.hub_degree;
    out.alpha_2_sq = a.cos_theta_2 * a.cos_theta_2 + 1.0 / p.hub_degree;
    out.f1 = Eigen::Vector3d(a.cos_theta_1, 0.0, hub_part) / std::sqrt(out.alpha_1_sq);
    out.f2 = Eigen::Vector3d(a.cos_theta_2, 0.0, hub_part) / std::sqrt(out.alpha_2_sq);
    return out;
}

std::string to_string(EigenLabel label) {
    switch (label) {
    case EigenLabel::plus_theta_1: return "e^{+i theta_1}";
    case EigenLabel::minus_theta_1: return "e^{-i theta_1}";
    case EigenLabel::plus_theta_2: return "e^{+i theta_2}";
    case EigenLabel::minus_theta_2: return "e^{-i theta_2}";
    case EigenLabel::minus_one: break;
    }
    return "-1";
}

double beta_sq_exact(std::size_t clique_size, std::size_t leaf_count) {
    const auto [n, m, hub] = params(clique_size, leaf_count);
    return 1.0 + 2.0 * (n - 2.0) + 2.0 * (n - 1.0) * (n - 2.0) / m;
}

double beta_sq_expansion(std::size_t clique_size, std::size_t leaf_count) {
    const auto [n, m, hub] = params(clique_size, leaf_count);
    return 1.0 + 2.0 * (n - 1.0) + 2.0 * (n - 1.0) * (n - 2.0) / m;
}

Vector5c closed_form_eigenvector(std::size_t clique_size, std::size_t leaf_count, EigenLabel label,
                                 Labeling labeling, double beta_sq) {
    const auto [n, m, hub] = params(clique_size, leaf_count);
    Vector5c v;
    if (label == EigenLabel::minus_one) {
        const double beta = std::sqrt(beta_sq > 0.0 ? beta_sq : beta_sq_exact(clique_size, leaf_count));
        const double clique = std::sqrt(n - 2.0);
        const double leaf = -std::sqrt((n - 1.0) * (n - 2.0) / m);
        v << -1.0, clique, clique, leaf, leaf;
        return v / beta;
    }

    const auto a = discriminant_angles(clique_size, leaf_count);
    const bool first = label == EigenLabel::plus_theta_1 || label == EigenLabel::minus_theta_1;
    const double sign = (label == EigenLabel::plus_theta_1 || label == EigenLabel::plus_theta_2) ? 1.0 : -1.0;
    const double c = first ? a.cos_theta_1 : a.cos_theta_2;
    const double s = first ? a.sin_theta_1() : a.sin_theta_2();
    const double one_minus_c = first ? a.one_minus_cos_theta_1 : 1.0 - a.cos_theta_2;
    const double alpha = std::sqrt(c * c + 1.0 / hub);
    const Complex lambda(c, sign * s);
    const Complex one_minus_lambda(one_minus_c, -sign * s);
    const double ratio = (n - 1.0) / hub;
    const double root_m = std::sqrt(m) / hub;

    // Printed form; it is written in the arc-reversed labeling.
    v(0) = std::sqrt((n - 2.0) / (n - 1.0)) * c * one_minus_lambda;
    v(1) = (c - lambda * ratio) / std::sqrt(n - 1.0);
    v(2) = (ratio - c * lambda) / std::sqrt(n - 1.0);
    v(3) = -lambda * root_m;
    v(4) = root_m;
    v /= std::sqrt(2.0) * alpha * std::abs(s);

    if (labeling == Labeling::walk) {
        std::swap(v(1), v(2));
        std::swap(v(3), v(4));
    }
    return v;
}

double SpectrumReport::max_residual() const {
    double r = 0.0;
    for (const auto& e : eigenpairs) r = std::max(r, e.residual);
    return r;
}

double eigenvalue_mismatch(const std::array<Complex, 5>& a, const std::array<Complex, 5>& b) {
    double mismatch = 0.0;
    (void)best_matching(a, b, &mismatch);
    return mismatch;
}

SpectrumReport u_eigensystem(std::size_t clique_size, std::size_t leaf_count) {
    const auto ops = build_reduced_operators(clique_size, leaf_count, LeafPhase::reversal);
    const auto tvec = t_eigenvectors(clique_size, leaf_count);

    SpectrumReport r;
    r.clique_size = clique_size;
    r.leaf_count = leaf_count;
    r.angles = discriminant_angles(clique_size, leaf_count);
    r.alpha_1_sq = tvec.alpha_1_sq;
    r.alpha_2_sq = tvec.alpha_2_sq;
    r.beta_sq = beta_sq_exact(clique_size, leaf_count);
    r.beta_sq_expansion = beta_sq_expansion(clique_size, leaf_count);

    std::array<Complex, 5> expected{};
    for (std::size_t k = 0; k < 5; ++k) {
        const EigenLabel label = kEigenLabels[k];
        expected[k] = expected_eigenvalue(r.angles, label);
        const Vector5c v = closed_form_eigenvector(clique_size, leaf_count, label);
        r.eigenpairs[k] = Eigenpair{expected[k], v, residual(ops.evolution, expected[k], v)};
        if (r.eigenpairs[k].residual >= kResidualTolerance) r.closed_form_valid = false;
    }

    Eigen::ComplexEigenSolver<Matrix5c> solver(ops.evolution.cast<Complex>());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of U0 failed");
    std::array<Complex, 5> numeric_values{};
    for (std::size_t k = 0; k < 5; ++k) numeric_values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    const auto match = best_matching(expected, numeric_values, &r.max_eigenvalue_mismatch);
    for (std::size_t k = 0; k < 5; ++k) {
        const auto j = static_cast<Eigen::Index>(match[k]);
        const Vector5c v = solver.eigenvectors().col(j).normalized();
        r.numeric[k] = Eigenpair{numeric_values[match[k]], v, residual(ops.evolution, numeric_values[match[k]], v)};
    }
    if (!r.closed_form_valid) r.eigenpairs = r.numeric;

    Matrix5c basis;
    for (std::size_t k = 0; k < 5; ++k) basis.col(static_cast<Eigen::Index>(k)) = r.eigenpairs[k].vector;
    r.orthonormality_defect = (basis.adjoint() * basis - Matrix5c::Identity()).cwiseAbs().maxCoeff();

    // Audit of the printed closed forms against the numeric eigenvectors.
    const Matrix5 reversed_walk = ops.shift * ops.evolution * ops.shift;
    for (std::size_t k = 0; k < 5; ++k) {
        const EigenLabel label = kEigenLabels[k];
        const std::string name = "eigenvector " + to_string(label);
        if (label == EigenLabel::minus_one) {
            audit_vector(r.audit, name + " (exact beta)", closed_form_eigenvector(clique_size, leaf_count, label),
                         r.numeric[k].vector);
            audit_vector(r.audit, name + " (expanded beta)",
                         closed_form_eigenvector(clique_size, leaf_count, label, Labeling::walk, r.beta_sq_expansion),
                         r.numeric[k].vector);
            continue;
        }
        const Vector5c printed = closed_form_eigenvector(clique_size, leaf_count, label, Labeling::reversed);
        audit_vector(r.audit, name + " as printed vs U0", printed, r.numeric[k].vector);
        audit_vector(r.audit, name + " relabeled vs U0", r.eigenpairs[k].vector, r.numeric[k].vector);
        const double res = residual(reversed_walk, expected[k], printed);
        r.audit.push_back({name + " as printed vs S0 U0 S0", "residual", res, res > kAuditThreshold});
        const double norm_dev = std::abs(printed.norm() - 1.0);
        r.audit.push_back({name + " prefactor 1/(sqrt2 alpha_x |sin theta_x|)", "norm", norm_dev,
                           norm_dev > kAuditThreshold});
    }
    return r;
}

AmplitudeCoefficients amplitude_coefficients(std::size_t clique_size, std::size_t leaf_count, std::size_t t,
                                             double beta_sq) {
    const auto [n, m, hub] = params(clique_size, leaf_count);
    const auto a = discriminant_angles(clique_size, leaf_count);
    const double beta2 = beta_sq > 0.0 ? beta_sq : beta_sq_exact(clique_size, leaf_count);
    const double tt = static_cast<double>(t);
    const double ratio = (n - 1.0) / hub;
    const double leaf_weight = std::sqrt(m * (n - 1.0)) / hub;

    const auto c_coef = [&](double c, double sin_theta, double sin_half) {
        const double alpha_sq = c * c + 1.0 / hub;
        return 2.0 * sin_half / (alpha_sq * sin_theta * sin_theta * std::sqrt(n)) * (c + 1.0 / hub);
    };

    AmplitudeCoefficients k;
    const double sh1 = std::sqrt(a.one_minus_cos_theta_1 / 2.0);
    const double sh2 = std::sqrt((1.0 - a.cos_theta_2) / 2.0);
    k.c1 = c_coef(a.cos_theta_1, a.sin_theta_1(), sh1);
    k.c2 = c_coef(a.cos_theta_2, a.sin_theta_2(), sh2);
    k.k1 = a.cos_theta_1 * std::sin((tt + 0.5) * a.theta_1) - ratio * std::sin((tt + 1.5) * a.theta_1);
    k.k2 = a.cos_theta_2 * std::sin((tt + 0.5) * a.theta_2) - ratio * std::sin((tt + 1.5) * a.theta_2);
    k.s1 = leaf_weight * std::sin((tt + 1.5) * a.theta_1);
    k.s2 = leaf_weight * std::sin((tt + 1.5) * a.theta_2);
    k.R_K = (n - 2.0) / (beta2 * std::sqrt(n));
    k.R_S = (n - 2.0) / beta2 * std::sqrt((n - 1.0) / (n * m));
    return k;
}

AmplitudePair closed_form_amplitudes(std::size_t clique_size, std::size_t leaf_count, std::size_t t, double beta_sq) {
    const auto k = amplitude_coefficients(clique_size, leaf_count, t, beta_sq);
    const double parity = (t % 2 == 0) ? 1.0 : -1.0;
    AmplitudePair out;
    out.coefficients = k;
    out.psi_K_plus = k.c1 * k.k1 + k.c2 * k.k2 + parity * k.R_K;
    out.psi_S_plus = -(k.c1 * k.s1 + k.c2 * k.s2) - parity * k.R_S;
    return out;
}

SpectralPropagator::SpectralPropagator(std::size_t clique_size, std::size_t leaf_count)
    : clique_size_(clique_size), leaf_count_(leaf_count) {
    const auto ops = build_reduced_operators(clique_size, leaf_count, LeafPhase::reversal);
    Eigen::ComplexEigenSolver<Matrix5c> solver(ops.evolution.cast<Complex>());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of U0 failed");
    vectors_ = solver.eigenvectors();
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 5; ++k) {
        values_[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        phases_[k] = std::arg(values_[k]);
        if (std::abs(values_[k] + 1.0) < nearest) {
            nearest = std::abs(values_[k] + 1.0);
            parity_index_ = k;
        }
    }
    weights_ = vectors_.partialPivLu().solve(to_vector(collapsed_initial_state(clique_size, leaf_count)));
}

Vector5c SpectralPropagator::state_at(std::size_t t) const {
    Vector5c psi = Vector5c::Zero();
    const double tt = static_cast<double>(t);
    for (std::size_t k = 0; k < 5; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        psi += weights_(i) * std::polar(1.0, tt * phases_[k]) * vectors_.col(i);
    }
    return psi;
}

Vector5c SpectralPropagator::parity_part_at(std::size_t t) const {
    const auto i = static_cast<Eigen::Index>(parity_index_);
    return weights_(i) * std::polar(1.0, static_cast<double>(t) * phases_[parity_index_]) * vectors_.col(i);
}

AmplitudePair SpectralPropagator::amplitudes(std::size_t t) const {
    const Vector5c psi = state_at(t);
    AmplitudePair out;
    out.psi_K_plus = psi(col_of(ArcClass::CliqueIn));
    out.psi_S_plus = psi(col_of(ArcClass::LeafIn));
    out.coefficients = amplitude_coefficients(clique_size_, leaf_count_, t);
    return out;
}

double SpectralPropagator::probability(std::size_t t) const {
    const Vector5c psi = state_at(t);
    return std::norm(psi(col_of(ArcClass::CliqueIn))) + std::norm(psi(col_of(ArcClass::LeafIn)));
}

AmplitudePair reference_amplitudes(std::size_t clique_size, std::size_t leaf_count, std::size_t t) {
    return SpectralPropagator(clique_size, leaf_count).amplitudes(t);
}

double closed_form_probability(std::size_t clique_size, std::size_t leaf_count, std::size_t t) {
    return SpectralPropagator(clique_size, leaf_count).probability(t);
}

ProbabilityTrace evolve_closed(std::size_t clique_size, std::size_t leaf_count, std::size_t t_max) {
    const SpectralPropagator prop(clique_size, leaf_count);
    ProbabilityTrace trace;
    trace.metadata.clique_size = clique_size;
    trace.metadata.leaf_count = leaf_count;
    trace.metadata.mode = "closed";
    trace.metadata.leaf_phase = LeafPhase::reversal;
    trace.rows.reserve(t_max + 1);
    for (std::size_t t = 0; t <= t_max; ++t) {
        const Vector5c psi = prop.state_at(t);
        const Complex k = psi(col_of(ArcClass::CliqueIn));
        const Complex s = psi(col_of(ArcClass::LeafIn));
        trace.rows.push_back(TraceRow{t, std::norm(k) + std::norm(s), k, s});
    }
    return trace;
}

std::vector<AuditEntry> audit_amplitude_formula(std::size_t clique_size, std::size_t leaf_count, std::size_t t_max) {
    const SpectralPropagator prop(clique_size, leaf_count);
    const double expanded = beta_sq_expansion(clique_size, leaf_count);
    const auto k_in = col_of(ArcClass::CliqueIn);
    const auto k_out = col_of(ArcClass::CliqueOut);
    const auto s_in = col_of(ArcClass::LeafIn);
    const auto s_out = col_of(ArcClass::LeafOut);

    struct MaxDev {
        double diff = 0.0;
        double scale = 0.0;
        void add(Complex formula, Complex reference) {
            diff = std::max(diff, std::abs(formula - reference));
            scale = std::max(scale, std::abs(reference));
        }
        double relative() const { return diff / std::max(scale, std::numeric_limits<double>::min()); }
    };
    MaxDev walk_k, walk_s, rev_k, rev_s, prob, parity_k, parity_s, exp_k, exp_s;

    Vector5c next = prop.state_at(0);
    for (std::size_t t = 0; t <= t_max; ++t) {
        const Vector5c now = next;
        next = prop.state_at(t + 1);
        const auto f = closed_form_amplitudes(clique_size, leaf_count, t);
        const auto g = closed_form_amplitudes(clique_size, leaf_count, t, expanded);
        walk_k.add(f.psi_K_plus, now(k_in));
        walk_s.add(f.psi_S_plus, now(s_in));
        rev_k.add(f.psi_K_plus, -next(k_out));
        rev_s.add(f.psi_S_plus, -next(s_out));
        prob.add(f.probability(), std::norm(now(k_in)) + std::norm(now(s_in)));

        const double parity = (t % 2 == 0) ? 1.0 : -1.0;
        const Vector5c part = prop.parity_part_at(t);
        parity_k.add(parity * f.coefficients.R_K, part(k_in));
        parity_s.add(-parity * f.coefficients.R_S, part(s_in));
        exp_k.add(g.coefficients.R_K, f.coefficients.R_K);
        exp_s.add(g.coefficients.R_S, f.coefficients.R_S);
    }

    std::vector<AuditEntry> out;
    const auto push = [&](std::string item, std::string component, const MaxDev& d) {
        const double dev = d.relative();
        out.push_back({std::move(item), std::move(component), dev, dev > kAuditThreshold});
    };
    push("amplitude formula vs Psi_t (walk labeling)", "AK+", walk_k);
    push("amplitude formula vs Psi_t (walk labeling)", "AS+", walk_s);
    push("amplitude formula vs -Psi_{t+1} on arcs leaving v* (arc-reversed labeling)", "AK+", rev_k);
    push("amplitude formula vs -Psi_{t+1} on arcs leaving v* (arc-reversed labeling)", "AS+", rev_s);
    push("squared amplitude formula vs p_t(v*)", "p", prob);
    push("parity terms vs -1 eigencomponent", "R_K", parity_k);
    push("parity terms vs -1 eigencomponent", "R_S", parity_s);
    push("parity terms with expanded beta", "R_K", exp_k);
    push("parity terms with expanded beta", "R_S", exp_s);
    return out;
}

} // namespace qwstar
