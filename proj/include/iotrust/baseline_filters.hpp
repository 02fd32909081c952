#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "iotrust/rng.hpp"

namespace iotrust {

// Point in the (direct trust, average precision) plane.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2D&) const = default;
};

inline double squared_distance(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct KMeansResult {
    std::vector<std::size_t> assignment;
    std::vector<Point2D> centroids;
    std::size_t iterations = 0;
};

// Plain Lloyd iteration with centroids seeded from the input points. Used as a
// timing baseline, so no k-means++ or acceleration tricks. An emptied cluster
// is re-seeded at the point farthest from its assigned centroid.
inline KMeansResult kmeans(std::span<const Point2D> points, std::size_t k,
                           std::size_t max_iter, double tol, std::uint64_t seed) {
    if (points.empty())
        throw std::invalid_argument("kmeans: no points");
    if (k < 1)
        throw std::invalid_argument("kmeans: k must be >= 1");

    Rng rng(seed);
    const std::size_t n = points.size();

    // Draw k starting centroids from distinct points (repeating when k > n).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i + 1 < n && i < k; ++i)
        std::swap(order[i], order[i + rng.index(n - i)]);

    KMeansResult result;
    result.centroids.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        result.centroids.push_back(points[order[j % n]]);
    result.assignment.assign(n, 0);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        result.iterations = iter;

        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = squared_distance(points[i], result.centroids[0]);
            for (std::size_t j = 1; j < k; ++j) {
                const double d = squared_distance(points[i], result.centroids[j]);
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            result.assignment[i] = best;
        }

        std::vector<Point2D> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[result.assignment[i]].x += points[i].x;
            sums[result.assignment[i]].y += points[i].y;
            ++counts[result.assignment[i]];
        }

        double movement = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            Point2D next = result.centroids[j];
            if (counts[j] > 0) {
                next = {sums[j].x / static_cast<double>(counts[j]),
                        sums[j].y / static_cast<double>(counts[j])};
            } else {
                // farthest point from its own centroid
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d =
                        squared_distance(points[i], result.centroids[result.assignment[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next = points[far];
            }
            movement = std::max(movement, std::sqrt(squared_distance(result.centroids[j], next)));
            result.centroids[j] = next;
        }

        if (movement < tol)
            break;
    }
    return result;
}

inline double kmeans_objective(std::span<const Point2D> points, const KMeansResult& result) {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        sum += squared_distance(points[i], result.centroids[result.assignment[i]]);
    return sum;
}

struct FuzzyCMeansResult {
    std::vector<std::vector<double>> membership;  // [point][cluster], rows sum to 1
    std::vector<Point2D> centroids;
    std::size_t iterations = 0;
};

// Standard fuzzy c-means with fuzzifier m: membership-weighted centroids and
// inverse-distance memberships with exponent 1/(m - 1) on squared distances.
// A point coinciding with a centroid gets full membership there.
inline FuzzyCMeansResult fuzzy_cmeans(std::span<const Point2D> points, std::size_t c,
                                      double m, std::size_t max_iter, double tol,
                                      std::uint64_t seed) {
    if (points.empty())
        throw std::invalid_argument("fuzzy_cmeans: no points");
    if (c < 1)
        throw std::invalid_argument("fuzzy_cmeans: c must be >= 1");
    if (m <= 1.0)
        throw std::invalid_argument("fuzzy_cmeans: m must be > 1");

    Rng rng(seed);
    const std::size_t n = points.size();
    const double exponent = 1.0 / (m - 1.0);
    // the common m = 2 case needs no pow() in either update
    const bool quadratic = m == 2.0;
    const auto fuzzified = [&](double u) { return quadratic ? u * u : std::pow(u, m); };
    const auto dist_ratio_pow = [&](double ratio) {
        return quadratic ? ratio : std::pow(ratio, exponent);
    };

    FuzzyCMeansResult result;
    result.membership.assign(n, std::vector<double>(c, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            result.membership[i][j] = rng.uniform() + 1e-9;
            row_sum += result.membership[i][j];
        }
        for (std::size_t j = 0; j < c; ++j)
            result.membership[i][j] /= row_sum;
    }
    result.centroids.assign(c, Point2D{});

    std::vector<double> dist(c, 0.0);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        result.iterations = iter;

        for (std::size_t j = 0; j < c; ++j) {
            double wx = 0.0, wy = 0.0, w = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = fuzzified(result.membership[i][j]);
                wx += u * points[i].x;
                wy += u * points[i].y;
                w += u;
            }
            if (w > 0.0)
                result.centroids[j] = {wx / w, wy / w};
            else
                result.centroids[j] = points[j % n];
        }

        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t coincident = c;
            for (std::size_t j = 0; j < c; ++j) {
                dist[j] = squared_distance(points[i], result.centroids[j]);
                if (dist[j] == 0.0 && coincident == c)
                    coincident = j;
            }
            for (std::size_t j = 0; j < c; ++j) {
                double next;
                if (coincident != c) {
                    next = j == coincident ? 1.0 : 0.0;
                } else {
                    double denom = 0.0;
                    for (std::size_t l = 0; l < c; ++l)
                        denom += dist_ratio_pow(dist[j] / dist[l]);
                    next = 1.0 / denom;
                }
                delta = std::max(delta, std::abs(next - result.membership[i][j]));
                result.membership[i][j] = next;
            }
        }

        if (delta < tol)
            break;
    }
    return result;
}

}  // namespace iotrust
