/*
 * Bloch picture: the operator ↔ coefficient isomorphism X = w₀λ₀ + Σ wₖλₖ,
 * the Bloch matrix T of a unital Hermiticity-preserving map, the orthogonal
 * matrices induced by adjoint unitary action, and the polar canonical form
 * T = R·S with S = V diag(μ) Vᵀ.
 *
 * w₀ is stored complex so the round-trip decompose → reconstruct is exact for
 * arbitrary (non-Hermitian-trace) operators; Hermitian inputs have real w₀
 * and real wₖ to 1e-12.
 */
#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "ks3/error.hpp"
#include "ks3/gellmann.hpp"
#include "ks3/matrix.hpp"
#include "ks3/numerics.hpp"

namespace ks3 {

inline constexpr double kIngestTol = 1e-10;     // unitality / Hermiticity-preservation
inline constexpr double kUnitaryTol = 1e-10;    // ‖U†U − I‖_F gate for adjoint action
inline constexpr double kRoundTripTol = 1e-12;  // decompose/reconstruct isomorphism

struct BlochVector {
    cx w0{0.0, 0.0};
    std::vector<cx> w;  // length d²−1

    int components() const { return static_cast<int>(w.size()); }
};

struct BlochMap {
    int d = 0;
    RealMatrix T;  // (d²−1)×(d²−1)
};

struct CanonicalForm {
    RealMatrix R;                  // orthogonal polar factor
    RealMatrix S;                  // symmetric PSD factor
    std::vector<double> mu;        // spectrum of S, ascending
    RealMatrix basis_change;       // eigenvectors of S (columns), same order as mu
};

// w₀ = Tr(λ₀X)/2, wₖ = Tr(λₖX)/2
inline BlochVector decompose(const ComplexMatrix& X, const GellMannBasis& basis) {
    if (X.dim() != basis.d) throw DimensionMismatch("decompose: operator dimension does not match basis");
    BlochVector v;
    v.w0 = 0.5 * trace_of_product(basis.lambda0, X);
    v.w.resize(static_cast<size_t>(basis.count()));
    for (int k = 0; k < basis.count(); ++k)
        v.w[static_cast<size_t>(k)] = 0.5 * trace_of_product(basis.lambdas[static_cast<size_t>(k)], X);
    return v;
}

inline ComplexMatrix reconstruct(const BlochVector& v, const GellMannBasis& basis) {
    if (v.components() != basis.count())
        throw DimensionMismatch("reconstruct: coefficient count does not match basis");
    ComplexMatrix X = v.w0 * basis.lambda0;
    for (int k = 0; k < basis.count(); ++k)
        X += v.w[static_cast<size_t>(k)] * basis.lambdas[static_cast<size_t>(k)];
    return X;
}

// T[k][l] = Tr(λₖ Φ(λ_l))/2 after validating unitality and Hermiticity preservation
// (the generators form a Hermitian probe set; Φ(λ_l) must be Hermitian).
inline BlochMap bloch_matrix_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& action,
                                    const GellMannBasis& basis) {
    const int d = basis.d;
    const int n = basis.count();

    const ComplexMatrix phi_id = action(ComplexMatrix::identity(d));
    if (distance_frobenius(phi_id, ComplexMatrix::identity(d)) > kIngestTol)
        throw NotUnital("bloch_matrix_of_map: Φ(I) differs from I beyond 1e-10");

    BlochMap m;
    m.d = d;
    m.T = RealMatrix(n, n);
    for (int l = 0; l < n; ++l) {
        const ComplexMatrix image = action(basis.lambdas[static_cast<size_t>(l)]);
        if (image.hermiticity_residual() > kIngestTol)
            throw NotHermiticityPreserving("bloch_matrix_of_map: Φ(λ_l) not Hermitian on the probe set");
        // Eq. w' = Tw presumes the λ0 component never mixes with the traceless
        // sector; a unital map with Tr Φ(λ_l) ≠ 0 has no such representation.
        if (std::abs(image.trace()) > kIngestTol)
            throw NotTracePreserving("bloch_matrix_of_map: Φ(λ_l) has a trace component; "
                                     "the map is unital but not trace-preserving");
        for (int k = 0; k < n; ++k) {
            const cx t = 0.5 * trace_of_product(basis.lambdas[static_cast<size_t>(k)], image);
            if (std::abs(t.imag()) > kIngestTol)
                throw NotHermiticityPreserving("bloch_matrix_of_map: complex Bloch-matrix entry");
            m.T(k, l) = t.real();
        }
    }
    return m;
}

// w₀ passes through unchanged; w ↦ T·w
inline BlochVector apply_map(const BlochMap& m, const BlochVector& v) {
    if (v.components() != m.T.rows())
        throw DimensionMismatch("apply_map: Bloch vector length does not match map");
    BlochVector out;
    out.w0 = v.w0;
    out.w = m.T * v.w;
    return out;
}

// O[j][k] = Tr(λⱼ U λₖ U†)/2 — the orthogonal representation of X ↦ UXU†
inline RealMatrix adjoint_orthogonal(const ComplexMatrix& U, const GellMannBasis& basis) {
    if (U.dim() != basis.d) throw DimensionMismatch("adjoint_orthogonal: unitary dimension does not match basis");
    const ComplexMatrix gram = U.dagger() * U;
    if (distance_frobenius(gram, ComplexMatrix::identity(U.dim())) > kUnitaryTol)
        throw NotUnitary("adjoint_orthogonal: U†U differs from I beyond 1e-10");

    const int n = basis.count();
    const ComplexMatrix Ud = U.dagger();
    RealMatrix O(n, n);
    for (int k = 0; k < n; ++k) {
        const ComplexMatrix conj = U * basis.lambdas[static_cast<size_t>(k)] * Ud;
        for (int j = 0; j < n; ++j)
            O(j, k) = (0.5 * trace_of_product(basis.lambdas[static_cast<size_t>(j)], conj)).real();
    }
    return O;
}

// Polar canonical form T = R·S; μ = spec(S) ascending with its eigenbasis attached.
inline CanonicalForm canonical_form(const BlochMap& m) {
    const detail::PolarData p = detail::polar_full(m.T);
    CanonicalForm cf;
    cf.R = p.R;
    cf.S = p.S;
    cf.mu = p.sigma;  // ascending by construction (eig of TᵀT ascending)
    cf.basis_change = p.V;
    return cf;
}

}  // namespace ks3
