#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "iotrust/sim.hpp"

namespace iotrust {

struct TimeValue {
    double time = 0.0;
    double value = 0.0;

    bool operator==(const TimeValue&) const = default;
};

// Time series of one metric for one provider. Times are strictly increasing.
class MetricSeries {
public:
    MetricSeries() = default;

    void append(double time, double value) {
        if (!points_.empty() && time <= points_.back().time)
            throw std::invalid_argument("MetricSeries: times must be strictly increasing");
        points_.push_back({time, value});
    }

    const std::vector<TimeValue>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    bool operator==(const MetricSeries&) const = default;

private:
    std::vector<TimeValue> points_;
};

// Mean absolute difference between two series sampled at identical times.
inline double mae(const MetricSeries& series, const MetricSeries& truth) {
    if (series.size() != truth.size())
        throw std::invalid_argument("mae: series lengths differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.points()[i].time != truth.points()[i].time)
            throw std::invalid_argument("mae: series timestamps are misaligned");
        sum += std::abs(series.points()[i].value - truth.points()[i].value);
    }
    return series.empty() ? 0.0 : sum / static_cast<double>(series.size());
}

inline MetricSeries domain_series(const SimulationTrace& trace, SpId sp) {
    MetricSeries series;
    for (const IterationRecord& rec : trace.iterations)
        if (rec.sp == sp)
            series.append(static_cast<double>(rec.time_s), rec.domain_trust);
    return series;
}

inline MetricSeries truth_series(const SimulationTrace& trace, SpId sp) {
    MetricSeries series;
    for (const IterationRecord& rec : trace.iterations)
        if (rec.sp == sp)
            series.append(static_cast<double>(rec.time_s), rec.ground_truth);
    return series;
}

}  // namespace iotrust
