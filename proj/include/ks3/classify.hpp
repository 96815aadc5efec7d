/*
 * Hierarchy placement CP ⊊ KS ⊊ Pos.
 *
 * CP is decided exactly (up to tol) by the Choi spectrum. KS combines the
 * analytic certifier with the numerical falsifier; positivity is probed by
 * rank-one witness search (sufficient by linearity). Search verdicts are
 * never proofs — every "no_violation_found" carries its budget and seed.
 *
 * The certifier is fed signed μ only when that is faithful to the map as
 * given: the diagonal of a diagonal T, or the signed spectrum of a symmetric
 * T (labeled, since the eigenbasis change need not be an adjoint unitary).
 * For non-symmetric T the certificate is skipped with a reason — the polar
 * factor S alone belongs to a different map.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ks3/error.hpp"
#include "ks3/ks.hpp"
#include "ks3/map.hpp"
#include "ks3/matrix.hpp"
#include "ks3/numerics.hpp"
#include "ks3/optim.hpp"
#include "ks3/rng.hpp"

namespace ks3 {

struct PositivityWitness {
    std::vector<cx> psi;       // unit vector in C³
    double min_eig = 0.0;      // λ_min(Φ(|ψ⟩⟨ψ|))
};

enum class KsVerdict { certified, violated, no_violation_found };
enum class PosVerdict { violated, no_violation_found };

inline const char* to_string(KsVerdict v) {
    switch (v) {
        case KsVerdict::certified: return "certified";
        case KsVerdict::violated: return "violated";
        case KsVerdict::no_violation_found: return "no_violation_found";
    }
    return "?";
}

inline const char* to_string(PosVerdict v) {
    return v == PosVerdict::violated ? "violated" : "no_violation_found";
}

struct ClassifyOptions {
    int ks_budget = 200;
    int pos_budget = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
};

struct MapClassification {
    bool cp = false;
    double min_choi_eig = 0.0;

    KsVerdict ks = KsVerdict::no_violation_found;
    std::optional<KSWitness> ks_witness;
    std::optional<KSCertificate> certificate;   // present iff attempted
    std::string certificate_scope;              // "diagonal" | "symmetric_eigenbasis"
    std::string certificate_skip_reason;        // nonempty iff certificate skipped

    PosVerdict positive = PosVerdict::no_violation_found;
    std::optional<PositivityWitness> pos_witness;

    ClassifyOptions options;
    double c3 = 0.0;
    std::vector<std::string> findings;          // hierarchy breaches; empty in healthy runs
};

inline ComplexMatrix choi_matrix(const UnitalMap& map) {
    ComplexMatrix C(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ComplexMatrix Eij(3);
            Eij(i, j) = 1.0;
            const ComplexMatrix img = map.apply(Eij);
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) C(3 * i + k, 3 * j + l) = img(k, l);
        }
    return C;
}

inline std::pair<bool, double> is_cp(const UnitalMap& map, double tol) {
    const ComplexMatrix C = choi_matrix(map);
    if (C.hermiticity_residual() > 1e-10 * std::max(1.0, C.frobenius_norm()))
        throw NonHermitianChoi("is_cp: Choi matrix not Hermitian");
    const double min_eig = min_eigenvalue(C);
    return {min_eig >= -tol, min_eig};
}

namespace detail {

inline std::vector<cx> unit_vector_from_params(const std::vector<double>& p) {
    std::vector<cx> psi(3);
    double norm2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        psi[static_cast<size_t>(i)] = cx{p[2 * static_cast<size_t>(i)], p[2 * static_cast<size_t>(i) + 1]};
        norm2 += std::norm(psi[static_cast<size_t>(i)]);
    }
    if (norm2 > 1e-24) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : psi) c *= inv;
    }
    return psi;
}

inline ComplexMatrix projector(const std::vector<cx>& psi) {
    ComplexMatrix P(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) P(r, c) = psi[static_cast<size_t>(r)] * std::conj(psi[static_cast<size_t>(c)]);
    return P;
}

}  // namespace detail

inline std::optional<PositivityWitness> positivity_search(const UnitalMap& map, int budget,
                                                          std::uint64_t seed) {
    if (budget < 1) throw InputError("positivity_search: budget must be >= 1");

    const auto objective = [&map](const std::vector<double>& p) {
        const std::vector<cx> psi = detail::unit_vector_from_params(p);
        double norm2 = 0.0;
        for (const auto& c : psi) norm2 += std::norm(c);
        if (norm2 < 0.5) return 1.0e3;  // degenerate all-zero start
        return min_eigenvalue(map.apply(detail::projector(psi)));
    };
    const auto start = [seed](int restart) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
        std::vector<double> x0(6);
        for (double& x : x0) x = rng.gaussian();
        return x0;
    };

    MultistartResult best = multistart_minimize(objective, start, budget, 120, 0.35, search_threads());
    best.x = nelder_mead(objective, best.x, 0.05, 1500, 1e-15).x;

    const std::vector<cx> psi = detail::unit_vector_from_params(best.x);
    const double min_eig = min_eigenvalue(map.apply(detail::projector(psi)));  // direct re-verification
    if (min_eig >= kViolationThreshold) return std::nullopt;
    PositivityWitness w;
    w.psi = psi;
    w.min_eig = min_eig;
    return w;
}

// Signed μ faithful to the map as given, or a reason why none is available.
// Returned μ is ascending for the symmetric case, diagonal order otherwise.
inline std::pair<std::optional<std::vector<double>>, std::string> certifiable_mu(const BlochMap& m,
                                                                                 std::string* scope) {
    const int n = m.T.rows();
    double offdiag = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (r != c) offdiag = std::max(offdiag, std::abs(m.T(r, c)));
    if (offdiag <= 1e-12) {
        std::vector<double> mu(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) mu[static_cast<size_t>(k)] = m.T(k, k);
        *scope = "diagonal";
        return {mu, ""};
    }
    if (m.T.symmetry_residual() <= 1e-10) {
        const EigenResult er = eig_hermitian(to_complex(m.T));
        *scope = "symmetric_eigenbasis";
        return {er.eigenvalues, ""};
    }
    *scope = "";
    return {std::nullopt,
            "Bloch matrix is not symmetric; certificate would apply only to the polar-equivalent map"};
}

inline MapClassification classify(const UnitalMap& map, const ClassifyOptions& options) {
    MapClassification out;
    out.options = options;
    out.c3 = c3_constant(sc3());

    const auto cp = is_cp(map, options.tol);
    out.cp = cp.first;
    out.min_choi_eig = cp.second;

    std::string scope;
    const auto mu = certifiable_mu(map.bloch(), &scope);
    if (mu.first.has_value()) {
        out.certificate = certify_ks(*mu.first, out.c3);
        out.certificate_scope = scope;
    } else {
        out.certificate_skip_reason = mu.second;
    }

    out.ks_witness = search_violation(map, options.ks_budget, mix_seed(options.seed, 1));
    out.pos_witness = positivity_search(map, options.pos_budget, mix_seed(options.seed, 2));

    if (out.ks_witness.has_value())
        out.ks = KsVerdict::violated;
    else if (out.certificate.has_value() && out.certificate->certified)
        out.ks = KsVerdict::certified;
    else
        out.ks = KsVerdict::no_violation_found;
    out.positive = out.pos_witness.has_value() ? PosVerdict::violated : PosVerdict::no_violation_found;

    if (out.cp && out.ks == KsVerdict::violated)
        out.findings.push_back("hierarchy breach: CP map with a verified KS violation");
    if (out.certificate.has_value() && out.certificate->certified && out.ks == KsVerdict::violated)
        out.findings.push_back("hierarchy breach: certified map with a verified KS violation");
    if (out.certificate.has_value() && out.certificate->certified && out.positive == PosVerdict::violated)
        out.findings.push_back("hierarchy breach: KS-certified map with a positivity violation");
    return out;
}

enum class RandomMapKind { diagonal_mu, unitary_mixture, kraus };

struct RandomMapParams {
    std::array<double, 8> mu_lo{};  // diagonal_mu box
    std::array<double, 8> mu_hi{};
    int terms = 3;                  // unitary_mixture / kraus operator count

    static RandomMapParams mu_box(double lo, double hi) {
        RandomMapParams p;
        p.mu_lo.fill(lo);
        p.mu_hi.fill(hi);
        return p;
    }
};

inline UnitalMap sample_random_map(RandomMapKind kind, const RandomMapParams& params,
                                   std::uint64_t seed) {
    Rng rng(seed);
    switch (kind) {
        case RandomMapKind::diagonal_mu: {
            std::vector<double> mu(8);
            for (int k = 0; k < 8; ++k) {
                const double lo = params.mu_lo[static_cast<size_t>(k)];
                const double hi = params.mu_hi[static_cast<size_t>(k)];
                if (lo < -1.0 || hi > 1.0 || lo > hi)
                    throw InputError("sample_random_map: mu box must lie inside [-1, 1]");
                mu[static_cast<size_t>(k)] = rng.uniform(lo, hi);
            }
            return UnitalMap::from_diagonal(std::move(mu));
        }
        case RandomMapKind::unitary_mixture: {
            if (params.terms < 1) throw InputError("sample_random_map: at least one unitary required");
            std::vector<double> weights(static_cast<size_t>(params.terms));
            double total = 0.0;
            for (double& w : weights) {
                w = rng.uniform01() + 1e-6;  // keep weights strictly positive
                total += w;
            }
            std::vector<ComplexMatrix> ops;
            ops.reserve(weights.size());
            for (double w : weights) {
                ComplexMatrix U = random_unitary(3, rng);
                U *= cx{std::sqrt(w / total), 0.0};
                ops.push_back(std::move(U));
            }
            return UnitalMap::from_kraus(std::move(ops));
        }
        case RandomMapKind::kraus: {
            if (params.terms < 1) throw InputError("sample_random_map: at least one Kraus term required");
            std::vector<ComplexMatrix> ops;
            ops.reserve(static_cast<size_t>(params.terms));
            for (int t = 0; t < params.terms; ++t) ops.push_back(random_matrix(3, rng));

            // M^{-1/2} via the eigendecomposition; rejects near-singular Gram matrices.
            const auto inv_sqrt_of = [](const ComplexMatrix& gram) {
                const EigenResult em = eig_hermitian(gram);
                if (em.eigenvalues.front() < 1e-8)
                    throw RejectedSample("sample_random_map: Kraus Gram matrix nearly singular");
                ComplexMatrix out(3);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        cx acc{0.0, 0.0};
                        for (int k = 0; k < 3; ++k)
                            acc += em.eigenvectors(a, k) * std::conj(em.eigenvectors(b, k)) /
                                   std::sqrt(em.eigenvalues[static_cast<size_t>(k)]);
                        out(a, b) = acc;
                    }
                return out;
            };

            // Operator Sinkhorn: alternate K ← M^{-1/2}K (Σ KK† = I) with
            // K ← K N^{-1/2} (Σ K†K = I). The Bloch form only carries maps that
            // are unital *and* trace-preserving, so both sides must converge.
            const ComplexMatrix id = ComplexMatrix::identity(3);
            double unital_residual = 1.0;
            for (int round = 0; round < 200 && unital_residual > 1e-12; ++round) {
                ComplexMatrix left(3);
                for (const auto& K : ops) left += K * K.dagger();
                const ComplexMatrix ls = inv_sqrt_of(left);
                for (auto& K : ops) K = ls * K;

                ComplexMatrix right(3);
                for (const auto& K : ops) right += K.dagger() * K;
                const ComplexMatrix rs = inv_sqrt_of(right);
                for (auto& K : ops) K = K * rs;

                ComplexMatrix check(3);
                for (const auto& K : ops) check += K * K.dagger();
                unital_residual = distance_frobenius(check, id);
            }
            if (unital_residual > 1e-10)
                throw RejectedSample("sample_random_map: unitalization residual too large");
            return UnitalMap::from_kraus(std::move(ops));
        }
    }
    throw InputError("sample_random_map: unknown kind");
}

}  // namespace ks3
