/*
 * Kadison–Schwarz machinery for unital maps on M₃:
 *
 *   Δ(X) = Φ(X†X) − Φ(X†)Φ(X)              exact difference operator
 *   Δ(X) = α(X)·I + Σₖ βₖ(X)·λₖ            quadratic Bloch expansion
 *
 * For a diagonal Bloch map μ and X with traceless components w:
 *   α  = (2/3)·Σᵢ (1 − μᵢ²)|wᵢ|²
 *   βₖ = Σᵢⱼ w̄ᵢwⱼ (μₖ − μᵢμⱼ)(d_ijk + i f_ijk)
 * βₖ is real; it splits into a d-tensor part (symmetric pairing, survives
 * for real and complex w alike) and an f-tensor part that is driven purely
 * by Im(w̄ᵢwⱼ) and therefore vanishes iff all pair products are real. Both
 * parts are reported separately so the cancellation claim can be audited
 * rather than assumed.
 *
 * The certifier implements the sufficient condition: μ ∈ [0,1]⁸ and
 * max|μᵢ−μⱼ| ≤ 2√2/(3C₃) with C₃ = (3√2/2)·Σₖ σ_max(D_k), (D_k)ᵢⱼ = d_ijk.
 * The falsifier minimizes λ_min(Δ(X)) over ‖X‖_F = 1 by seeded multi-start
 * Nelder–Mead; scale is fixed by Δ(cX) = |c|²Δ(X).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ks3/bloch.hpp"
#include "ks3/error.hpp"
#include "ks3/gellmann.hpp"
#include "ks3/map.hpp"
#include "ks3/matrix.hpp"
#include "ks3/numerics.hpp"
#include "ks3/optim.hpp"
#include "ks3/rng.hpp"

namespace ks3 {

inline constexpr double kCertSlack = 1e-12;            // slack on every certifier clause
inline constexpr double kViolationThreshold = -1e-7;   // λ_min below this ⇒ genuine witness
inline constexpr char kC3Recipe[] = "c3 = (3*sqrt(2)/2) * sum_k sigma_max(D_k), (D_k)_ij = d_ijk";
inline constexpr char kMuPolicy[] = "mu in [0,1]^8 (PSD canonical factor), stricter than |mu| <= 1";

struct KSExpansion {
    double alpha = 0.0;
    std::vector<double> beta;          // βₖ = beta_sym + beta_antisym
    std::vector<double> beta_sym;      // d-tensor contribution
    std::vector<double> beta_antisym;  // f-tensor contribution (vanishes iff Im(w̄ᵢwⱼ)-free)
};

struct KSCertificate {
    bool certified = false;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double spread = 0.0;
    double bound = 0.0;
    double c3 = 0.0;
    std::vector<std::string> reasons;  // violated clauses, empty iff certified
};

struct KSWitness {
    ComplexMatrix X;                   // normalized: ‖X‖_F = 1
    double min_eig = 0.0;              // λ_min(Δ(X))
    double frobenius_norm_X = 1.0;
};

struct ContractionReport {
    int samples = 0;
    double max_ratio = 0.0;            // max over samples of ‖Φ(A)‖/‖A‖
    bool passed = false;               // every sample within ‖A‖ + 1e-10
};

struct NormalAuditReport {
    int samples = 0;
    double worst_min_eig = 0.0;        // min over samples of λ_min(Δ(X))
    bool all_psd = false;              // worst ≥ −1e-9
};

inline ComplexMatrix ks_difference(const UnitalMap& map, const ComplexMatrix& X) {
    if (X.dim() != 3) throw DimensionMismatch("ks_difference: X must be 3x3");
    const ComplexMatrix Xd = X.dagger();
    return map.apply(Xd * X) - map.apply(Xd) * map.apply(X);
}

inline KSExpansion ks_expansion(const std::vector<double>& mu, const BlochVector& v,
                                const StructureConstants& sc) {
    const int n = sc.n;
    if (static_cast<int>(mu.size()) != n || v.components() != n)
        throw DimensionMismatch("ks_expansion: mu/Bloch-vector length must match structure constants");

    KSExpansion e;
    e.beta.assign(static_cast<size_t>(n), 0.0);
    e.beta_sym.assign(static_cast<size_t>(n), 0.0);
    e.beta_antisym.assign(static_cast<size_t>(n), 0.0);

    for (int i = 0; i < n; ++i)
        e.alpha += (1.0 - mu[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)]) *
                   std::norm(v.w[static_cast<size_t>(i)]);
    e.alpha *= 2.0 / sc.d;

    for (int k = 0; k < n; ++k) {
        double bs = 0.0, ba = 0.0;
        for (int i = 0; i < n; ++i) {
            const double wii = std::norm(v.w[static_cast<size_t>(i)]);
            bs += wii * (mu[static_cast<size_t>(k)] - mu[static_cast<size_t>(i)] * mu[static_cast<size_t>(i)]) *
                  sc.d_at(i, i, k);
            for (int j = i + 1; j < n; ++j) {
                const cx p = std::conj(v.w[static_cast<size_t>(i)]) * v.w[static_cast<size_t>(j)];
                const double factor =
                    mu[static_cast<size_t>(k)] - mu[static_cast<size_t>(i)] * mu[static_cast<size_t>(j)];
                bs += 2.0 * p.real() * factor * sc.d_at(i, j, k);
                ba -= 2.0 * p.imag() * factor * sc.f_at(i, j, k);
            }
        }
        e.beta_sym[static_cast<size_t>(k)] = bs;
        e.beta_antisym[static_cast<size_t>(k)] = ba;
        e.beta[static_cast<size_t>(k)] = bs + ba;
    }
    return e;
}

// α·I + Σₖ βₖλₖ as a matrix, for the expansion-equality checks.
inline ComplexMatrix reconstruct_expansion(const KSExpansion& e, const GellMannBasis& basis) {
    if (static_cast<int>(e.beta.size()) != basis.count())
        throw DimensionMismatch("reconstruct_expansion: coefficient count does not match basis");
    ComplexMatrix out = e.alpha * ComplexMatrix::identity(basis.d);
    for (int k = 0; k < basis.count(); ++k)
        out += cx{e.beta[static_cast<size_t>(k)], 0.0} * basis.lambdas[static_cast<size_t>(k)];
    return out;
}

inline double c3_constant(const StructureConstants& sc) {
    double sum = 0.0;
    for (int k = 0; k < sc.n; ++k) {
        RealMatrix Dk(sc.n, sc.n);
        for (int i = 0; i < sc.n; ++i)
            for (int j = 0; j < sc.n; ++j) Dk(i, j) = sc.d_at(i, j, k);
        sum += max_abs_eigenvalue(to_complex(Dk));
    }
    return 1.5 * std::sqrt(2.0) * sum;
}

inline double ks_bound(double c3) { return 2.0 * std::sqrt(2.0) / (3.0 * c3); }

inline KSCertificate certify_ks(const std::vector<double>& mu, double c3) {
    KSCertificate cert;
    cert.c3 = c3;
    cert.bound = ks_bound(c3);
    cert.mu_min = *std::min_element(mu.begin(), mu.end());
    cert.mu_max = *std::max_element(mu.begin(), mu.end());
    cert.spread = cert.mu_max - cert.mu_min;

    if (cert.mu_min < -kCertSlack)
        cert.reasons.push_back("mu range: entries must be nonnegative (PSD canonical factor), min = " +
                               std::to_string(cert.mu_min));
    if (cert.mu_max > 1.0 + kCertSlack)
        cert.reasons.push_back("mu range: entries must not exceed 1, max = " + std::to_string(cert.mu_max));
    if (cert.spread > cert.bound + kCertSlack)
        cert.reasons.push_back("spread: max|mu_i - mu_j| = " + std::to_string(cert.spread) +
                               " exceeds 2*sqrt(2)/(3*c3) = " + std::to_string(cert.bound));
    cert.certified = cert.reasons.empty();
    return cert;
}

namespace detail {

// 18 raw parameters → X/‖X‖_F; objective λ_min(Δ(X)).
inline ComplexMatrix witness_matrix(const std::vector<double>& p) {
    ComplexMatrix X(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const size_t base = 2 * static_cast<size_t>(3 * r + c);
            X(r, c) = cx{p[base], p[base + 1]};
        }
    const double n = X.frobenius_norm();
    if (n > 1e-12) X *= cx{1.0 / n, 0.0};
    return X;
}

}  // namespace detail

struct SearchOutcome {
    std::optional<KSWitness> witness;  // present iff best_value < −1e-7
    double best_value = 0.0;           // re-verified λ_min(Δ) at the polished champion
};

inline SearchOutcome search_violation_full(const UnitalMap& map, int budget, std::uint64_t seed) {
    if (budget < 1) throw InputError("search_violation: budget must be >= 1");

    const auto objective = [&map](const std::vector<double>& p) {
        const ComplexMatrix X = detail::witness_matrix(p);
        if (X.frobenius_norm() < 0.5) return 1.0e3;  // degenerate all-zero start
        return min_eigenvalue(ks_difference(map, X));
    };
    const auto start = [seed](int restart) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<double> x0(18);
        for (double& x : x0) x = rng.gaussian();
        return x0;
    };

    MultistartResult best = multistart_minimize(objective, start, budget, 150, 0.35, search_threads());
    // polish the champion with two progressively finer simplexes
    best.x = nelder_mead(objective, best.x, 0.08, 2500, 1e-14).x;
    NelderMeadResult fine = nelder_mead(objective, best.x, 0.01, 2500, 1e-15);

    SearchOutcome out;
    const ComplexMatrix X = detail::witness_matrix(fine.x);
    out.best_value = min_eigenvalue(ks_difference(map, X));  // direct re-verification
    if (out.best_value < kViolationThreshold) {
        KSWitness w;
        w.X = X;
        w.min_eig = out.best_value;
        w.frobenius_norm_X = X.frobenius_norm();
        out.witness = std::move(w);
    }
    return out;
}

inline std::optional<KSWitness> search_violation(const UnitalMap& map, int budget, std::uint64_t seed) {
    return search_violation_full(map, budget, seed).witness;
}

inline ContractionReport kadison_contraction_check(const UnitalMap& map, int samples, std::uint64_t seed) {
    ContractionReport rep;
    rep.samples = samples;
    rep.passed = true;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const ComplexMatrix A = random_hermitian(3, rng);
        const double norm_a = operator_norm_hermitian(A);
        const double norm_fa = operator_norm_hermitian(map.apply(A));
        if (norm_fa > norm_a + 1e-10) rep.passed = false;
        if (norm_a > 1e-12) rep.max_ratio = std::max(rep.max_ratio, norm_fa / norm_a);
    }
    return rep;
}

inline NormalAuditReport normal_operator_audit(const UnitalMap& map, int samples, std::uint64_t seed) {
    NormalAuditReport rep;
    rep.samples = samples;
    rep.worst_min_eig = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const ComplexMatrix X = random_normal_operator(3, rng);
        rep.worst_min_eig = std::min(rep.worst_min_eig, min_eigenvalue(ks_difference(map, X)));
    }
    rep.all_psd = rep.worst_min_eig >= -1e-9;
    return rep;
}

}  // namespace ks3
