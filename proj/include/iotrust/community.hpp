#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "iotrust/direct_trust.hpp"

namespace iotrust {

using DeviceId = std::size_t;
using SpId = std::size_t;

// One device's reported direct trust for one provider in the current
// iteration.
struct TrustReport {
    DeviceId device = 0;
    double value = 0.0;

    bool operator==(const TrustReport&) const = default;
};

// Per-iteration table of reported direct trusts, one row per provider.
class TrustMatrix {
public:
    TrustMatrix(std::size_t sp_count, std::size_t device_count)
        : sp_count_(sp_count),
          device_count_(device_count),
          values_(sp_count * device_count, 0.0),
          present_(sp_count * device_count, 0) {}

    std::size_t sp_count() const { return sp_count_; }
    std::size_t device_count() const { return device_count_; }

    void submit(SpId sp, DeviceId device, double value) {
        const std::size_t i = cell(sp, device);
        values_[i] = value;
        present_[i] = 1;
    }

    std::optional<double> get(SpId sp, DeviceId device) const {
        const std::size_t i = cell(sp, device);
        if (!present_[i])
            return std::nullopt;
        return values_[i];
    }

    // Reports submitted for one provider, in device-id order.
    std::vector<TrustReport> reports_for(SpId sp) const {
        std::vector<TrustReport> reports;
        reports.reserve(device_count_);
        for (DeviceId dev = 0; dev < device_count_; ++dev) {
            const std::size_t i = cell(sp, dev);
            if (present_[i])
                reports.push_back({dev, values_[i]});
        }
        return reports;
    }

    void clear() {
        present_.assign(present_.size(), 0);
    }

private:
    std::size_t cell(SpId sp, DeviceId device) const {
        if (sp >= sp_count_ || device >= device_count_)
            throw std::out_of_range("TrustMatrix: index out of range");
        return sp * device_count_ + device;
    }

    std::size_t sp_count_;
    std::size_t device_count_;
    std::vector<double> values_;
    std::vector<unsigned char> present_;
};

// Precision trust per (provider, device): how accurately the device has been
// rating that provider. Every cell starts at 1.
class PrecisionMatrix {
public:
    PrecisionMatrix(std::size_t sp_count, std::size_t device_count)
        : sp_count_(sp_count),
          device_count_(device_count),
          values_(sp_count * device_count, 1.0) {}

    std::size_t sp_count() const { return sp_count_; }
    std::size_t device_count() const { return device_count_; }

    double at(SpId sp, DeviceId device) const { return values_[cell(sp, device)]; }
    void set(SpId sp, DeviceId device, double value) { values_[cell(sp, device)] = value; }

    // Mean precision of one device across all providers.
    double column_mean(DeviceId device) const {
        if (device >= device_count_)
            throw std::out_of_range("PrecisionMatrix: unknown device");
        if (sp_count_ == 0)
            throw std::out_of_range("PrecisionMatrix: no providers");
        double sum = 0.0;
        for (SpId sp = 0; sp < sp_count_; ++sp)
            sum += values_[sp * device_count_ + device];
        return sum / static_cast<double>(sp_count_);
    }

private:
    std::size_t cell(SpId sp, DeviceId device) const {
        if (sp >= sp_count_ || device >= device_count_)
            throw std::out_of_range("PrecisionMatrix: index out of range");
        return sp * device_count_ + device;
    }

    std::size_t sp_count_;
    std::size_t device_count_;
    std::vector<double> values_;
};

inline double avg_precision(const PrecisionMatrix& pt, DeviceId device) {
    return pt.column_mean(device);
}

// Grid index of a direct trust value: 0 untrusted, 1 uncertain, 2 trusted.
inline int grid_of(double direct_trust) {
    if (direct_trust >= kHighZone)
        return 2;
    if (direct_trust >= kLowZone)
        return 1;
    return 0;
}

// Precision floors for keeping reports from outside the actual cluster.
inline constexpr double kNeighborPrecisionFloor = 0.3;
inline constexpr double kWrongPrecisionFloor = 0.7;

struct ClusterPoint {
    DeviceId device = 0;
    double direct_trust = 0.0;
    double avg_precision = 0.0;

    bool operator==(const ClusterPoint&) const = default;
};

// The three-grid partition of one provider's reports. actual_cluster is the
// dense grid with the highest average precision (rightmost on ties); its
// adjacent grids are neighbors and the remaining grid, if any, is wrong.
struct ClusterResult {
    enum class Role { actual, neighbor, wrong };

    std::array<std::vector<ClusterPoint>, 3> grids;
    std::array<bool, 3> is_dense{};
    std::array<std::optional<double>, 3> avg_prec{};
    int actual_cluster = -1;
    std::size_t min_points = 0;
    std::size_t total_points = 0;

    Role role_of(int grid) const {
        const int distance = grid > actual_cluster ? grid - actual_cluster
                                                   : actual_cluster - grid;
        if (distance == 0)
            return Role::actual;
        if (distance == 1)
            return Role::neighbor;
        return Role::wrong;
    }
};

// Grid assignment and dense-cluster selection over one provider's reports.
// avg_precisions[device] must hold each device's average precision from the
// precision state at the start of the iteration. Single pass over the reports
// plus a scan of the three grids. The out-parameter form reuses the result's
// grid buffers, so a caller running every collection interval allocates
// nothing in steady state.
inline void form_clusters(std::span<const TrustReport> reports,
                          std::span<const double> avg_precisions, ClusterResult& result) {
    if (reports.empty())
        throw std::invalid_argument("form_clusters: no reports");
    result.is_dense = {false, false, false};
    result.avg_prec = {};
    result.actual_cluster = -1;
    result.total_points = reports.size();
    result.min_points = std::max<std::size_t>(1, reports.size() / 3);

    // count pass, then a fill pass into pre-reserved grids, accumulating the
    // per-grid precision sums on the way
    std::size_t counts[3] = {0, 0, 0};
    for (const TrustReport& report : reports) {
        if (report.device >= avg_precisions.size())
            throw std::out_of_range("form_clusters: device without a precision entry");
        ++counts[static_cast<std::size_t>(grid_of(report.value))];
    }
    for (int j = 0; j < 3; ++j) {
        result.grids[static_cast<std::size_t>(j)].clear();
        result.grids[static_cast<std::size_t>(j)].reserve(counts[j]);
    }
    double prec_sum[3] = {0.0, 0.0, 0.0};
    for (const TrustReport& report : reports) {
        const int grid = grid_of(report.value);
        const double precision = avg_precisions[report.device];
        result.grids[static_cast<std::size_t>(grid)].push_back(
            {report.device, report.value, precision});
        prec_sum[grid] += precision;
    }

    double max_avg_prec = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 3; ++j) {
        if (counts[j] < result.min_points)
            continue;
        result.is_dense[static_cast<std::size_t>(j)] = true;
        const double avg = prec_sum[j] / static_cast<double>(counts[j]);
        result.avg_prec[static_cast<std::size_t>(j)] = avg;
        if (avg >= max_avg_prec) {
            max_avg_prec = avg;
            result.actual_cluster = j;
        }
    }
}

inline ClusterResult form_clusters(std::span<const TrustReport> reports,
                                   std::span<const double> avg_precisions) {
    ClusterResult result;
    form_clusters(reports, avg_precisions, result);
    return result;
}

inline ClusterResult form_clusters(std::span<const TrustReport> reports,
                                   const PrecisionMatrix& pt) {
    std::vector<double> precisions(pt.device_count());
    for (DeviceId dev = 0; dev < pt.device_count(); ++dev)
        precisions[dev] = pt.column_mean(dev);
    return form_clusters(reports, precisions);
}

// Report filtering: everything in the actual cluster; neighbor-cluster reports
// from devices whose average precision clears the uncertain floor; wrong-
// cluster reports only from devices with a strong rating history.
inline std::vector<TrustReport> select_ratings(const ClusterResult& clusters) {
    std::vector<TrustReport> selected;
    for (int j = 0; j < 3; ++j) {
        const ClusterResult::Role role = clusters.role_of(j);
        for (const ClusterPoint& point : clusters.grids[static_cast<std::size_t>(j)]) {
            const bool keep =
                role == ClusterResult::Role::actual ||
                (role == ClusterResult::Role::neighbor &&
                 point.avg_precision > kNeighborPrecisionFloor) ||
                (role == ClusterResult::Role::wrong &&
                 point.avg_precision > kWrongPrecisionFloor);
            if (keep)
                selected.push_back({point.device, point.direct_trust});
        }
    }
    return selected;
}

struct DomainTrustRecord {
    SpId sp = 0;
    double value = kUncertainTrust;
    std::size_t iteration = 0;

    bool operator==(const DomainTrustRecord&) const = default;
};

// Equal-weight blend of the previous domain trust and the mean of the selected
// reports.
inline DomainTrustRecord domain_trust_update(const DomainTrustRecord& prev,
                                             std::span<const TrustReport> selected) {
    if (selected.empty())
        throw std::invalid_argument("domain_trust_update: empty selection");
    double sum = 0.0;
    for (const TrustReport& report : selected)
        sum += report.value;
    const double fresh = sum / static_cast<double>(selected.size());
    return {prev.sp, 0.5 * (prev.value + fresh), prev.iteration + 1};
}

// Precision refresh after one provider's clustering: actual-cluster entries
// move halfway to 1, neighbor entries halfway to 0.5, wrong entries halfway
// to 0. Devices that did not report keep their entries.
inline void update_precision(PrecisionMatrix& pt, const ClusterResult& clusters, SpId sp) {
    for (int j = 0; j < 3; ++j) {
        const ClusterResult::Role role = clusters.role_of(j);
        for (const ClusterPoint& point : clusters.grids[static_cast<std::size_t>(j)]) {
            const double old = pt.at(sp, point.device);
            double updated = 0.0;
            switch (role) {
            case ClusterResult::Role::actual:
                updated = 0.5 * (old + 1.0);
                break;
            case ClusterResult::Role::neighbor:
                updated = 0.5 * (old + 0.5);
                break;
            case ClusterResult::Role::wrong:
                updated = 0.5 * old;
                break;
            }
            pt.set(sp, point.device, updated);
        }
    }
}

}  // namespace iotrust
