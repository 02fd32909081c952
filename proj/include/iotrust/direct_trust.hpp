#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "iotrust/window.hpp"

namespace iotrust {

// Midpoint of the uncertain zone; the trust assigned to unknown entities and
// empty windows.
inline constexpr double kUncertainTrust = 0.5;

// Zone boundaries of the trust space: [0, 0.3) untrusted, [0.3, 0.7)
// uncertain, [0.7, 1] trusted.
inline constexpr double kLowZone = 0.3;
inline constexpr double kHighZone = 0.7;

struct TrustParams {
    double beta = 7.0;          // weight of the score mean vs. the time weight
    double reward_exp = 1.5;    // r: sensitivity to high ratings
    double penalty_exp = 0.25;  // e: sensitivity to low ratings
    double high_threshold = kHighZone;
    double low_threshold = kLowZone;

    void validate() const {
        if (beta <= 0.0)
            throw std::invalid_argument("TrustParams: beta must be > 0");
        if (reward_exp < 0.0 || reward_exp > 2.0)
            throw std::invalid_argument("TrustParams: reward_exp must be in [0, 2]");
        if (penalty_exp < 0.0 || penalty_exp > 2.0)
            throw std::invalid_argument("TrustParams: penalty_exp must be in [0, 2]");
    }

    bool operator==(const TrustParams&) const = default;
};

// Intermediate quantities of one direct-trust evaluation, kept around for
// tracing and tests.
struct TrustFactors {
    double trust_score = kUncertainTrust;  // mean rating in the window
    double time_weight = kUncertainTrust;  // positional freshness of the ratings
    double intermediate = kUncertainTrust;
    std::size_t high_count = 0;
    std::size_t low_count = 0;
    double reward = 1.0;
    double penalty = 1.0;
    double direct_trust = kUncertainTrust;

    bool operator==(const TrustFactors&) const = default;
};

// Mean rating value across the window; empty when the window has no data.
inline std::optional<double> trust_score_factor(const TrustWindow& window) {
    double sum = 0.0;
    std::size_t n = 0;
    window.visit_ratings([&](const TrustRating& r, std::size_t, std::size_t) {
        sum += r.value;
        ++n;
    });
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

// Mean slot-position weight of the ratings. The branch flips the weight when
// the score mean is low, so both old praise and old complaints fade toward the
// uncertain midpoint instead of dominating the blend.
inline std::optional<double> time_weight_factor(const TrustWindow& window, double trust_score) {
    double sum = 0.0;
    std::size_t n = 0;
    window.visit_ratings([&](const TrustRating&, std::size_t position, std::size_t total) {
        sum += static_cast<double>(position) / static_cast<double>(total);
        ++n;
    });
    if (n == 0)
        return std::nullopt;
    const double mean = sum / static_cast<double>(n);
    return trust_score >= 0.5 ? mean : 1.0 - mean;
}

// F-beta style weighted harmonic mean of the score mean and the time weight.
// Equal inputs are a fixed point, which also pins the degenerate 0/0 case
// to 0.
inline double intermediate_trust(double trust_score, double time_weight, double beta) {
    if (time_weight == trust_score)
        return trust_score;
    const double b2 = beta * beta;
    return (1.0 + b2) * time_weight * trust_score / (b2 * time_weight + trust_score);
}

// 1 - 1/(high_count + 2)^r, increasing in both arguments.
inline double reward_factor(std::size_t high_count, double reward_exp) {
    return 1.0 - 1.0 / std::pow(static_cast<double>(high_count) + 2.0, reward_exp);
}

// 1/(low_count + 1)^e, decreasing in low_count.
inline double penalty_factor(std::size_t low_count, double penalty_exp) {
    return 1.0 / std::pow(static_cast<double>(low_count) + 1.0, penalty_exp);
}

// Direct trust of one provider as seen by one device: reward x penalty x
// intermediate trust over the device's current window. An empty window yields
// the uncertain default.
inline TrustFactors direct_trust(const TrustWindow& window, const TrustParams& params) {
    TrustFactors factors;
    const std::optional<double> score = trust_score_factor(window);
    if (!score)
        return factors;
    factors.trust_score = *score;
    factors.time_weight = *time_weight_factor(window, factors.trust_score);
    factors.intermediate = intermediate_trust(factors.trust_score, factors.time_weight, params.beta);
    window.visit_ratings([&](const TrustRating& r, std::size_t, std::size_t) {
        if (r.value > params.high_threshold)
            ++factors.high_count;
        else if (r.value < params.low_threshold)
            ++factors.low_count;
    });
    factors.reward = reward_factor(factors.high_count, params.reward_exp);
    factors.penalty = penalty_factor(factors.low_count, params.penalty_exp);
    factors.direct_trust = factors.reward * factors.penalty * factors.intermediate;
    return factors;
}

}  // namespace iotrust
