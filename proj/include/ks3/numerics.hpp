/*
 * Dense linear-algebra kernel: Hermitian eigendecomposition (cyclic Jacobi),
 * PSD tests, real polar decomposition.
 *
 * All matrices here are ≤ 9×9, so Jacobi is the whole story: simple, robust,
 * dependency-free, and its rotation sequence is deterministic, which the
 * golden tests and byte-stable reports rely on.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ks3/error.hpp"
#include "ks3/matrix.hpp"

namespace ks3 {

// Relative Hermiticity precondition for eig_hermitian.
constexpr double kHermitianInputTol = 1e-12;
// Sweep terminates when the off-diagonal Frobenius mass drops below this
// fraction of ‖H‖_F.
constexpr double kJacobiOffTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi for a Hermitian matrix. Eigenvalues ascending; for degenerate
// eigenvalues the eigenvector order is fixed by a stable sort over the
// deterministic rotation sequence, so identical inputs give identical output.
inline EigenResult eig_hermitian(const ComplexMatrix& h) {
    const int n = h.dim();
    if (n == 0) throw InvalidDimension("eig_hermitian: empty matrix");
    if (!h.is_hermitian(kHermitianInputTol))
        throw NonHermitianInput("eig_hermitian: input is not Hermitian within tolerance");

    // Fold the (tiny) Hermiticity residual away so the iteration sees an
    // exactly Hermitian matrix.
    ComplexMatrix a(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm_h = a.frobenius_norm();

    if (n > 1 && norm_h > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
            if (detail::offdiag_norm(a) < kJacobiOffTol * norm_h) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const cx hpq = a(p, q);
                    const double abs_h = std::abs(hpq);
                    if (abs_h == 0.0) continue;

                    // Unitary 2×2 rotation J with block [[c, −s̄],[s, c]],
                    // s = t·c·e^{−iφ}, φ = arg(H[p][q]), annihilating H'[p][q].
                    const cx phase = hpq / abs_h;
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double tau = (app - aqq) / (2.0 * abs_h);
                    double t;
                    if (tau >= 0.0)
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    else
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const cx s = t * c * std::conj(phase);

                    // Columns: A ← A·J, then rows: A ← J†·A.
                    for (int r = 0; r < n; ++r) {
                        const cx arp = a(r, p), arq = a(r, q);
                        a(r, p) = c * arp + s * arq;
                        a(r, q) = -std::conj(s) * arp + c * arq;
                    }
                    for (int r = 0; r < n; ++r) {
                        const cx apr = a(p, r), aqr = a(q, r);
                        a(p, r) = c * apr + std::conj(s) * aqr;
                        a(q, r) = -s * apr + c * aqr;
                    }
                    for (int r = 0; r < n; ++r) {
                        const cx vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = c * vrp + s * vrq;
                        v(r, q) = -std::conj(s) * vrp + c * vrq;
                    }
                }
            }
        }
        if (!converged && detail::offdiag_norm(a) >= kJacobiOffTol * norm_h)
            throw ConvergenceError("eig_hermitian: Jacobi failed to converge in 100 sweeps");
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

    EigenResult res;
    res.eigenvalues.resize(static_cast<size_t>(n));
    res.eigenvectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        res.eigenvalues[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
        for (int r = 0; r < n; ++r) res.eigenvectors(r, k) = v(r, order[static_cast<size_t>(k)]);
    }
    return res;
}

inline double min_eigenvalue(const ComplexMatrix& h) { return eig_hermitian(h).eigenvalues.front(); }

inline double max_abs_eigenvalue(const ComplexMatrix& h) {
    const EigenResult e = eig_hermitian(h);
    return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

// Operator norm of a Hermitian matrix.
inline double operator_norm_hermitian(const ComplexMatrix& h) { return max_abs_eigenvalue(h); }

inline bool is_psd(const ComplexMatrix& h, double tol) { return min_eigenvalue(h) >= -tol; }

// ── Polar decomposition T = R·S ──────────────────────────────────────────────

struct PolarResult {
    RealMatrix R;  // orthogonal
    RealMatrix S;  // symmetric PSD
};

namespace detail {

// Full polar data: T = R S, S = V diag(σ) Vᵀ with σ ascending.
struct PolarData {
    RealMatrix R;
    RealMatrix S;
    RealMatrix V;               // orthogonal, columns are eigenvectors of S
    std::vector<double> sigma;  // singular values of T, ascending
};

// S = (TᵀT)^{1/2} from the eigendecomposition of TᵀT; R = T S⁺ completed
// orthogonally on ker(S) by Gram–Schmidt against the standard basis.
inline PolarData polar_full(const RealMatrix& t) {
    if (t.rows() != t.cols()) throw DimensionMismatch("polar_decompose: square matrices only");
    const int n = t.rows();

    const RealMatrix m = t.transpose() * t;
    const EigenResult eig = eig_hermitian(to_complex(m));

    RealMatrix v(n, n);
    std::vector<double> sigma(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        sigma[static_cast<size_t>(k)] = std::sqrt(std::max(0.0, eig.eigenvalues[static_cast<size_t>(k)]));
        for (int r = 0; r < n; ++r) v(r, k) = eig.eigenvectors(r, k).real();
    }

    const double sigma_max = sigma.back();
    const double rank_tol = 1e-12 * std::max(1.0, sigma_max);

    // Left factors u_k = T v_k / σ_k; orthonormal because ⟨Tv_i, Tv_j⟩ = σ_j² δ_ij.
    RealMatrix u(n, n);
    std::vector<bool> filled(static_cast<size_t>(n), false);
    for (int k = 0; k < n; ++k) {
        if (sigma[static_cast<size_t>(k)] <= rank_tol) continue;
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c) acc += t(r, c) * v(c, k);
            u(r, k) = acc / sigma[static_cast<size_t>(k)];
        }
        filled[static_cast<size_t>(k)] = true;
    }

    // Kernel columns: first standard basis vector with a usable residual,
    // iterated in index order so the completion is deterministic.
    for (int k = 0; k < n; ++k) {
        if (filled[static_cast<size_t>(k)]) continue;
        for (int cand = 0; cand < n; ++cand) {
            std::vector<double> w(static_cast<size_t>(n), 0.0);
            w[static_cast<size_t>(cand)] = 1.0;
            for (int j = 0; j < n; ++j) {
                if (!filled[static_cast<size_t>(j)]) continue;
                double dot = 0.0;
                for (int r = 0; r < n; ++r) dot += u(r, j) * w[static_cast<size_t>(r)];
                for (int r = 0; r < n; ++r) w[static_cast<size_t>(r)] -= dot * u(r, j);
            }
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 0.5) {
                for (int r = 0; r < n; ++r) u(r, k) = w[static_cast<size_t>(r)] / norm;
                filled[static_cast<size_t>(k)] = true;
                break;
            }
        }
        if (!filled[static_cast<size_t>(k)])
            throw NumericError("polar_decompose: orthogonal completion failed");
    }

    // One modified Gram–Schmidt pass over all columns squeezes the roundoff
    // out of U so that R Rᵀ = I holds to machine precision.
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            double dot = 0.0;
            for (int r = 0; r < n; ++r) dot += u(r, j) * u(r, k);
            for (int r = 0; r < n; ++r) u(r, k) -= dot * u(r, j);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += u(r, k) * u(r, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw NumericError("polar_decompose: degenerate left factor");
        for (int r = 0; r < n; ++r) u(r, k) /= norm;
    }

    PolarData out;
    out.V = v;
    out.sigma = sigma;
    out.R = u * v.transpose();

    RealMatrix s(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += v(r, k) * sigma[static_cast<size_t>(k)] * v(c, k);
            s(r, c) = acc;
        }
    // exact symmetry
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) {
            const double avg = 0.5 * (s(r, c) + s(c, r));
            s(r, c) = avg;
            s(c, r) = avg;
        }
    out.S = s;
    return out;
}

}  // namespace detail

inline PolarResult polar_decompose(const RealMatrix& t) {
    detail::PolarData d = detail::polar_full(t);
    return PolarResult{std::move(d.R), std::move(d.S)};
}

}  // namespace ks3
