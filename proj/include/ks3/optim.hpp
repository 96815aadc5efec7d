/*
 * Derivative-free local minimization (Nelder–Mead).
 *
 * The witness searches minimize λ_min of a Hermitian matrix, which is
 * non-smooth at eigenvalue crossings; a simplex method is robust there and
 * the objectives are cheap (3×3 eigensolves), so function count is not a
 * concern. Fully deterministic: no internal randomness, stable tie-breaks.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace ks3 {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
};

template <class F>
inline NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, double step,
                                    int max_evals, double ftol_abs = 1e-12) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0;  // reflection
    const double gamma = 2.0;  // expansion
    const double rho = 0.5;    // contraction
    const double sigma = 0.5;  // shrink

    std::vector<std::vector<double>> pts(static_cast<size_t>(n) + 1, x0);
    for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i) + 1][static_cast<size_t>(i)] += step;

    std::vector<double> vals(static_cast<size_t>(n) + 1);
    int evals = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        vals[i] = f(pts[i]);
        ++evals;
    }

    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[static_cast<size_t>(a)] < vals[static_cast<size_t>(b)]; });
    };
    sort_order();

    while (evals < max_evals) {
        const int best = order.front();
        const int worst = order.back();
        const int second_worst = order[order.size() - 2];

        if (vals[static_cast<size_t>(worst)] - vals[static_cast<size_t>(best)] <= ftol_abs) break;

        // centroid of all but the worst point
        std::vector<double> centroid(static_cast<size_t>(n), 0.0);
        for (int idx : order)
            if (idx != worst)
                for (int k = 0; k < n; ++k) centroid[static_cast<size_t>(k)] += pts[static_cast<size_t>(idx)][static_cast<size_t>(k)];
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k)
                p[static_cast<size_t>(k)] = centroid[static_cast<size_t>(k)] +
                                            coeff * (centroid[static_cast<size_t>(k)] - pts[static_cast<size_t>(worst)][static_cast<size_t>(k)]);
            return p;
        };

        std::vector<double> reflected = blend(alpha);
        const double fr = f(reflected);
        ++evals;

        if (fr < vals[static_cast<size_t>(best)]) {
            std::vector<double> expanded = blend(alpha * gamma);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                pts[static_cast<size_t>(worst)] = std::move(expanded);
                vals[static_cast<size_t>(worst)] = fe;
            } else {
                pts[static_cast<size_t>(worst)] = std::move(reflected);
                vals[static_cast<size_t>(worst)] = fr;
            }
        } else if (fr < vals[static_cast<size_t>(second_worst)]) {
            pts[static_cast<size_t>(worst)] = std::move(reflected);
            vals[static_cast<size_t>(worst)] = fr;
        } else {
            // contract toward the better of {worst, reflected}
            const bool outside = fr < vals[static_cast<size_t>(worst)];
            std::vector<double> contracted(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                const double towards = outside ? reflected[static_cast<size_t>(k)]
                                               : pts[static_cast<size_t>(worst)][static_cast<size_t>(k)];
                contracted[static_cast<size_t>(k)] = centroid[static_cast<size_t>(k)] +
                                                     rho * (towards - centroid[static_cast<size_t>(k)]);
            }
            const double fc = f(contracted);
            ++evals;
            if (fc < std::min(fr, vals[static_cast<size_t>(worst)])) {
                pts[static_cast<size_t>(worst)] = std::move(contracted);
                vals[static_cast<size_t>(worst)] = fc;
            } else {
                // shrink toward the best vertex
                for (int idx : order) {
                    if (idx == best) continue;
                    for (int k = 0; k < n; ++k)
                        pts[static_cast<size_t>(idx)][static_cast<size_t>(k)] =
                            pts[static_cast<size_t>(best)][static_cast<size_t>(k)] +
                            sigma * (pts[static_cast<size_t>(idx)][static_cast<size_t>(k)] -
                                     pts[static_cast<size_t>(best)][static_cast<size_t>(k)]);
                    vals[static_cast<size_t>(idx)] = f(pts[static_cast<size_t>(idx)]);
                    ++evals;
                    if (evals >= max_evals) break;
                }
            }
        }
        sort_order();
    }

    sort_order();
    NelderMeadResult out;
    out.x = pts[static_cast<size_t>(order.front())];
    out.value = vals[static_cast<size_t>(order.front())];
    out.evals = evals;
    return out;
}

struct MultistartResult {
    std::vector<double> x;
    double value = 0.0;
    int restart = -1;  // index of the winning restart
};

// Parallelism cap from KS3_THREADS; 0 (or unset/invalid) means serial.
inline int search_threads() {
    const char* env = std::getenv("KS3_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) return 0;
    return static_cast<int>(v);
}

/*
 * Seeded multi-start: restart r starts from start_for(r) and runs its own
 * Nelder–Mead. Restarts are independent, so striping them across threads
 * changes nothing about any individual result; the merge picks the smallest
 * value with ties broken by restart index, making serial and parallel runs
 * agree bit-for-bit.
 */
template <class F, class StartGen>
inline MultistartResult multistart_minimize(F&& f, StartGen&& start_for, int restarts,
                                            int evals_per_restart, double step, int threads) {
    std::vector<NelderMeadResult> results(static_cast<size_t>(restarts));
    auto run_slot = [&](int r) {
        results[static_cast<size_t>(r)] = nelder_mead(f, start_for(r), step, evals_per_restart);
    };

    if (threads <= 1) {
        for (int r = 0; r < restarts; ++r) run_slot(r);
    } else {
        const int workers = std::min(threads, restarts);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (int r = t; r < restarts; r += workers) run_slot(r);
            });
        for (auto& th : pool) th.join();
    }

    MultistartResult best;
    for (int r = 0; r < restarts; ++r) {
        const auto& cand = results[static_cast<size_t>(r)];
        if (best.restart < 0 || cand.value < best.value) {
            best.x = cand.x;
            best.value = cand.value;
            best.restart = r;
        }
    }
    return best;
}

}  // namespace ks3
