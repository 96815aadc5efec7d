/*
 * Seeded randomness with pinned-down semantics.
 *
 * std::mt19937_64 output is fully specified by the standard, but the
 * std::*_distribution adaptors are not, so every transform here (53-bit
 * uniform, Box–Muller gaussian) is written out explicitly. Identical seeds
 * therefore give bit-identical streams on any conforming platform, which is
 * what makes reports replayable.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ks3/matrix.hpp"

namespace ks3 {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform on [0, 1) with 53 bits of mantissa
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal, Box–Muller with the sine partner cached
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        cached_ = r * std::sin(angle);
        has_cached_ = true;
        return r * std::cos(angle);
    }

    cx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cx{re, im};
    }

  private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 gen_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// splitmix64 finalizer; derives independent sub-streams from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Ginibre matrix: independent standard complex gaussian entries.
inline ComplexMatrix random_matrix(int d, Rng& rng) {
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = rng.complex_gaussian();
    return m;
}

inline ComplexMatrix random_hermitian(int d, Rng& rng) {
    const ComplexMatrix a = random_matrix(d, rng);
    ComplexMatrix h(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) h(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
    return h;
}

// Haar-distributed unitary: Gram–Schmidt on a Ginibre matrix (QR with the
// positive-diagonal R convention).
inline ComplexMatrix random_unitary(int d, Rng& rng) {
    ComplexMatrix g = random_matrix(d, rng);
    ComplexMatrix u(d);
    for (int k = 0; k < d; ++k) {
        std::vector<cx> col(static_cast<size_t>(d));
        for (int r = 0; r < d; ++r) col[static_cast<size_t>(r)] = g(r, k);
        for (int j = 0; j < k; ++j) {
            cx dot{0.0, 0.0};
            for (int r = 0; r < d; ++r) dot += std::conj(u(r, j)) * col[static_cast<size_t>(r)];
            for (int r = 0; r < d; ++r) col[static_cast<size_t>(r)] -= dot * u(r, j);
        }
        double norm = 0.0;
        for (const cx& v : col) norm += std::norm(v);
        norm = std::sqrt(norm);
        for (int r = 0; r < d; ++r) u(r, k) = col[static_cast<size_t>(r)] / norm;
    }
    return u;
}

// Random normal operator: unitarily diagonalized random complex spectrum.
inline ComplexMatrix random_normal_operator(int d, Rng& rng) {
    const ComplexMatrix u = random_unitary(d, rng);
    std::vector<cx> spectrum(static_cast<size_t>(d));
    for (cx& z : spectrum) z = rng.complex_gaussian();
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            cx acc{0.0, 0.0};
            for (int k = 0; k < d; ++k) acc += u(r, k) * spectrum[static_cast<size_t>(k)] * std::conj(u(c, k));
            out(r, c) = acc;
        }
    return out;
}

inline std::vector<cx> random_unit_vector(int d, Rng& rng) {
    std::vector<cx> v(static_cast<size_t>(d));
    double norm = 0.0;
    do {
        norm = 0.0;
        for (cx& z : v) {
            z = rng.complex_gaussian();
            norm += std::norm(z);
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (cx& z : v) z /= norm;
    return v;
}

}  // namespace ks3
