#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrust/baseline_filters.hpp"
#include "iotrust/community.hpp"
#include "iotrust/rng.hpp"
#include "iotrust/sim.hpp"

namespace iotrust {

namespace detail {

template <typename T>
inline void do_not_optimize(const T& value) {
    asm volatile("" : : "r,m"(value) : "memory");
}

template <typename Fn>
inline double median_us(std::size_t reps, Fn&& once) {
    std::vector<double> micros(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        once(rep);
        const auto t1 = std::chrono::steady_clock::now();
        micros[rep] =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() / 1000.0;
    }
    std::nth_element(micros.begin(), micros.begin() + static_cast<std::ptrdiff_t>(reps / 2),
                     micros.end());
    return micros[reps / 2];
}

}  // namespace detail

struct BenchConfig {
    std::vector<std::size_t> sizes = {150, 300, 600, 1200};
    std::size_t reps = 20;
    std::uint64_t seed = 42;
    // Baselines run their full iteration cap: three clusters, fuzzifier 2,
    // 100 iterations, no early stop. Early stopping is the kernels' regular
    // behavior; the timing comparison pins the work instead.
    std::size_t max_iter = 100;
    double tol = 0.0;
};

// Times the three clustering kernels on identical seeded report sets and
// reports the median wall time per kernel per size.
inline std::vector<BenchRow> bench_clustering(const BenchConfig& cfg) {
    if (cfg.reps == 0)
        throw std::invalid_argument("bench_clustering: reps must be > 0");
    std::vector<BenchRow> rows;
    for (const std::size_t n : cfg.sizes) {
        if (n < 3)
            throw std::invalid_argument("bench_clustering: sizes must be >= 3");

        Rng rng(mix_seed(cfg.seed, 0xbe, n));
        std::vector<TrustReport> reports(n);
        std::vector<double> precisions(n);
        std::vector<Point2D> points(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform();
            const double y = rng.uniform();
            reports[i] = {i, x};
            precisions[i] = y;
            points[i] = {x, y};
        }

        ClusterResult scratch;  // reused across reps, as the community server would
        rows.push_back({n, "subspace", detail::median_us(cfg.reps, [&](std::size_t) {
                            form_clusters(reports, precisions, scratch);
                            detail::do_not_optimize(scratch.actual_cluster);
                        })});
        rows.push_back({n, "kmeans", detail::median_us(cfg.reps, [&](std::size_t rep) {
                            const KMeansResult result = kmeans(
                                points, 3, cfg.max_iter, cfg.tol, mix_seed(cfg.seed, 0x6b, rep));
                            detail::do_not_optimize(result.assignment.front());
                        })});
        rows.push_back({n, "fcm", detail::median_us(cfg.reps, [&](std::size_t rep) {
                            const FuzzyCMeansResult result =
                                fuzzy_cmeans(points, 3, 2.0, cfg.max_iter, cfg.tol,
                                             mix_seed(cfg.seed, 0xfc, rep));
                            detail::do_not_optimize(result.membership.front().front());
                        })});
    }
    return rows;
}

}  // namespace iotrust
