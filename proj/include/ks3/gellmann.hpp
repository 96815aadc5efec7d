/*
 * Generalized Gell-Mann basis of su(d) and its structure constants.
 *
 * Generators are Hermitian, traceless, normalized to Tr(λᵢλⱼ) = 2δᵢⱼ, and
 * ordered the standard way: per level k = 2..d, the symmetric/antisymmetric
 * off-diagonal pair for each j < k, then the level's diagonal generator.
 * For d = 3 this is exactly λ₁..λ₈; for d = 2 the Pauli matrices.
 *
 * Products decompose as λᵢλⱼ = (2/d)δᵢⱼ·I + Σₖ (d_ijk + i·f_ijk) λₖ with
 * d_ijk totally symmetric and f_ijk totally antisymmetric. Both tensors are
 * recovered from one trace per triple: z = Tr(λᵢλⱼλₖ), d = Re(z)/2,
 * f = Im(z)/2. Stored dense — 512 doubles each for d = 3.
 */
#pragma once

#include <cmath>
#include <vector>

#include "ks3/error.hpp"
#include "ks3/matrix.hpp"

namespace ks3 {

struct GellMannBasis {
    int d = 0;
    ComplexMatrix lambda0;               // √(2/d)·I
    std::vector<ComplexMatrix> lambdas;  // d²−1 generators, fixed order

    int count() const { return static_cast<int>(lambdas.size()); }

    // 1-based access matching the λ₁..λ₈ convention
    const ComplexMatrix& lambda(int k) const {
        if (k < 1 || k > count()) throw IndexOutOfRange("GellMannBasis: generator index out of range");
        return lambdas[static_cast<size_t>(k) - 1];
    }
};

inline GellMannBasis generators(int d) {
    if (d < 2) throw InvalidDimension("generators: dimension must be at least 2");

    GellMannBasis basis;
    basis.d = d;
    basis.lambda0 = std::sqrt(2.0 / d) * ComplexMatrix::identity(d);
    basis.lambdas.reserve(static_cast<size_t>(d) * d - 1);

    for (int top = 1; top < d; ++top) {
        for (int j = 0; j < top; ++j) {
            ComplexMatrix sym(d);
            sym(j, top) = 1.0;
            sym(top, j) = 1.0;
            basis.lambdas.push_back(std::move(sym));

            ComplexMatrix asym(d);
            asym(j, top) = cx{0.0, -1.0};
            asym(top, j) = cx{0.0, 1.0};
            basis.lambdas.push_back(std::move(asym));
        }
        ComplexMatrix diag(d);
        const double coeff = std::sqrt(2.0 / (static_cast<double>(top) * (top + 1)));
        for (int m = 0; m < top; ++m) diag(m, m) = coeff;
        diag(top, top) = -static_cast<double>(top) * coeff;
        basis.lambdas.push_back(std::move(diag));
    }
    return basis;
}

struct StructureConstants {
    int d = 0;
    int n = 0;  // d²−1
    std::vector<double> d_tensor;
    std::vector<double> f_tensor;

    // 0-based tensor accessors
    double d_at(int i, int j, int k) const { return d_tensor[idx(i, j, k)]; }
    double f_at(int i, int j, int k) const { return f_tensor[idx(i, j, k)]; }

  private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k);
    }
};

inline StructureConstants structure_constants(const GellMannBasis& basis) {
    StructureConstants sc;
    sc.d = basis.d;
    sc.n = basis.count();
    const size_t n = static_cast<size_t>(sc.n);
    sc.d_tensor.assign(n * n * n, 0.0);
    sc.f_tensor.assign(n * n * n, 0.0);

    // precompute pair products once; traces against λₖ are then O(d²)
    std::vector<ComplexMatrix> products(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            products[i * n + j] = basis.lambdas[i] * basis.lambdas[j];

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                const cx z = trace_of_product(products[i * n + j], basis.lambdas[k]);
                sc.d_tensor[(i * n + j) * n + k] = 0.5 * z.real();
                sc.f_tensor[(i * n + j) * n + k] = 0.5 * z.imag();
            }
    return sc;
}

struct ProductExpansion {
    double scalar_coeff = 0.0;  // coefficient of the identity: (2/d)δᵢⱼ
    std::vector<cx> coeffs;     // coefficient of λₖ: d_ijk + i·f_ijk (k 1-based = index+1)
};

// Expansion of λᵢλⱼ; i, j are 1-based like the λ numbering.
inline ProductExpansion product_expand(const StructureConstants& sc, int i, int j) {
    if (i < 1 || i > sc.n || j < 1 || j > sc.n)
        throw IndexOutOfRange("product_expand: generator index out of range");
    ProductExpansion out;
    out.scalar_coeff = (i == j) ? 2.0 / sc.d : 0.0;
    out.coeffs.resize(static_cast<size_t>(sc.n));
    for (int k = 0; k < sc.n; ++k)
        out.coeffs[static_cast<size_t>(k)] = cx{sc.d_at(i - 1, j - 1, k), sc.f_at(i - 1, j - 1, k)};
    return out;
}

}  // namespace ks3
