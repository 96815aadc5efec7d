/*
 * UnitalMap: the common carrier for unital Hermiticity-preserving maps on M₃.
 *
 * Maps are ingested in any of four forms — Bloch matrix, diagonal μ, Kraus
 * list, Choi matrix — validated at ingestion (1e-10), and normalized to a
 * BlochMap. The action Φ(X) is then always evaluated through the Bloch
 * closure reconstruct(T·decompose(X)), so every carried map is exactly
 * unital and Hermiticity-preserving regardless of ingestion roundoff. The
 * original payload is retained for serialization.
 */
#pragma once

#include <utility>
#include <vector>

#include "ks3/bloch.hpp"
#include "ks3/error.hpp"
#include "ks3/gellmann.hpp"
#include "ks3/matrix.hpp"

namespace ks3 {

// Shared d = 3 basis and structure constants (immutable after first use).
inline const GellMannBasis& gm3() {
    static const GellMannBasis basis = generators(3);
    return basis;
}

inline const StructureConstants& sc3() {
    static const StructureConstants sc = structure_constants(gm3());
    return sc;
}

enum class MapKind { bloch, bloch_diagonal, kraus, choi };

inline const char* to_string(MapKind k) {
    switch (k) {
        case MapKind::bloch: return "bloch";
        case MapKind::bloch_diagonal: return "bloch_diagonal";
        case MapKind::kraus: return "kraus";
        case MapKind::choi: return "choi";
    }
    return "?";
}

class UnitalMap {
  public:
    static UnitalMap from_bloch(RealMatrix T) {
        if (T.rows() != 8 || T.cols() != 8)
            throw DimensionMismatch("from_bloch: T must be 8x8 for d = 3");
        UnitalMap m(MapKind::bloch);
        m.bloch_.d = 3;
        m.bloch_.T = std::move(T);
        return m;
    }

    static UnitalMap from_diagonal(std::vector<double> mu) {
        if (mu.size() != 8) throw DimensionMismatch("from_diagonal: mu must have 8 entries");
        UnitalMap m(MapKind::bloch_diagonal);
        m.bloch_.d = 3;
        m.bloch_.T = RealMatrix(8, 8);
        for (int k = 0; k < 8; ++k) m.bloch_.T(k, k) = mu[static_cast<size_t>(k)];
        m.mu_ = std::move(mu);
        return m;
    }

    static UnitalMap from_kraus(std::vector<ComplexMatrix> ops) {
        if (ops.empty()) throw DimensionMismatch("from_kraus: at least one Kraus operator required");
        for (const auto& K : ops)
            if (K.dim() != 3) throw DimensionMismatch("from_kraus: operators must be 3x3");
        const auto action = [&ops](const ComplexMatrix& X) {
            ComplexMatrix out(3);
            for (const auto& K : ops) out += K * X * K.dagger();
            return out;
        };
        UnitalMap m(MapKind::kraus);
        m.bloch_ = bloch_matrix_of_map(action, gm3());
        m.kraus_ = std::move(ops);
        return m;
    }

    static UnitalMap from_choi(ComplexMatrix C) {
        if (C.dim() != 9) throw DimensionMismatch("from_choi: Choi matrix must be 9x9");
        if (C.hermiticity_residual() > kIngestTol)
            throw NotHermiticityPreserving("from_choi: Choi matrix not Hermitian");
        // Φ(E_ij)[k][l] = C[3i+k][3j+l]; extend by linearity
        const auto action = [&C](const ComplexMatrix& X) {
            ComplexMatrix out(3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const cx x = X(i, j);
                    if (x == cx{0.0, 0.0}) continue;
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) out(k, l) += x * C(3 * i + k, 3 * j + l);
                }
            return out;
        };
        UnitalMap m(MapKind::choi);
        m.bloch_ = bloch_matrix_of_map(action, gm3());
        m.choi_ = std::move(C);
        return m;
    }

    static UnitalMap from_action(const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
        UnitalMap m(MapKind::bloch);
        m.bloch_ = bloch_matrix_of_map(action, gm3());
        return m;
    }

    MapKind kind() const { return kind_; }
    const BlochMap& bloch() const { return bloch_; }
    const RealMatrix& T() const { return bloch_.T; }

    bool is_diagonal() const { return kind_ == MapKind::bloch_diagonal; }
    const std::vector<double>& mu_diagonal() const { return mu_; }    // nonempty iff bloch_diagonal
    const std::vector<ComplexMatrix>& kraus_ops() const { return kraus_; }  // nonempty iff kraus
    const ComplexMatrix& choi_payload() const { return choi_; }       // dim 9 iff choi

    // Φ(X) through the Bloch closure: w₀ fixed, w ↦ T·w.
    ComplexMatrix apply(const ComplexMatrix& X) const {
        if (X.dim() != bloch_.d) throw DimensionMismatch("UnitalMap::apply: operator must be 3x3");
        return reconstruct(apply_map(bloch_, decompose(X, gm3())), gm3());
    }

  private:
    explicit UnitalMap(MapKind k) : kind_(k) {}

    MapKind kind_;
    BlochMap bloch_;
    std::vector<double> mu_;
    std::vector<ComplexMatrix> kraus_;
    ComplexMatrix choi_;
};

}  // namespace ks3
