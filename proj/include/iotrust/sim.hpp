#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrust/attacks.hpp"
#include "iotrust/community.hpp"
#include "iotrust/direct_trust.hpp"
#include "iotrust/rng.hpp"
#include "iotrust/window.hpp"

namespace iotrust {

// Escalating attacker share: during block b (block_seconds long) the first
// round(fractions[b] * n_devices) devices act as attackers. Precision state
// carries across blocks; the whole sweep is one continuous run.
struct AttackEscalation {
    RaterBehavior attacker;
    std::int64_t block_seconds = 800;
    std::vector<double> fractions;

    // Block b covers times in (b * block_seconds, (b+1) * block_seconds]; the
    // collection at a block boundary still belongs to the outgoing block.
    std::size_t block_at(std::int64_t time) const {
        if (time <= 1 || fractions.empty())
            return 0;
        return std::min(static_cast<std::size_t>((time - 1) / block_seconds),
                        fractions.size() - 1);
    }

    std::size_t attacker_count_at(std::int64_t time, std::size_t n_devices) const {
        if (fractions.empty())
            return 0;
        return static_cast<std::size_t>(
            std::llround(fractions[block_at(time)] * static_cast<double>(n_devices)));
    }

    void validate() const {
        attacker.validate();
        if (block_seconds <= 0)
            throw std::invalid_argument("AttackEscalation: block_seconds must be > 0");
        for (double f : fractions)
            if (f < 0.0 || f > 1.0)
                throw std::invalid_argument("AttackEscalation: fractions must be in [0, 1]");
    }

    bool operator==(const AttackEscalation&) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::size_t n_devices = 50;
    std::vector<SpBehavior> sp_behaviors;
    std::vector<RaterBehavior> rater_behaviors;  // empty means all honest
    std::int64_t service_request_interval_s = 4;
    std::int64_t domain_trust_interval_s = 100;
    std::int64_t sim_duration_s = 2000;
    WindowConfig window{};
    TrustParams trust{};
    std::uint64_t seed = 1;
    bool filtering_enabled = true;
    std::optional<AttackEscalation> escalation;

    void validate() const {
        if (n_devices == 0)
            throw std::invalid_argument("ScenarioConfig: need at least one device");
        if (sp_behaviors.empty())
            throw std::invalid_argument("ScenarioConfig: need at least one service provider");
        if (!rater_behaviors.empty() && rater_behaviors.size() != n_devices)
            throw std::invalid_argument("ScenarioConfig: rater_behaviors must match n_devices");
        if (service_request_interval_s <= 0)
            throw std::invalid_argument("ScenarioConfig: service_request_interval_s must be > 0");
        if (domain_trust_interval_s <= 0)
            throw std::invalid_argument("ScenarioConfig: domain_trust_interval_s must be > 0");
        if (sim_duration_s < 0)
            throw std::invalid_argument("ScenarioConfig: sim_duration_s must be >= 0");
        window.validate();
        trust.validate();
        const double slot = window.slot_duration;
        if (slot != std::floor(slot) || slot < 1.0)
            throw std::invalid_argument("ScenarioConfig: slot_duration must be a whole number of seconds");
        if (domain_trust_interval_s % static_cast<std::int64_t>(slot) != 0)
            throw std::invalid_argument(
                "ScenarioConfig: domain_trust_interval_s must be a multiple of the slot duration");
        for (const SpBehavior& sp : sp_behaviors)
            sp.validate();
        for (const RaterBehavior& rater : rater_behaviors)
            rater.validate();
        if (escalation)
            escalation->validate();
    }

    bool operator==(const ScenarioConfig&) const = default;
};

// One domain-trust computation for one provider. ground_truth is the
// simulator-side oracle: the same equal-weight blend fed only by the true
// direct trusts of devices that are honest at that instant.
struct IterationRecord {
    std::int64_t time_s = 0;
    SpId sp = 0;
    double domain_trust = kUncertainTrust;
    double ground_truth = kUncertainTrust;
    std::size_t selected_count = 0;
    std::size_t filtered_count = 0;

    bool operator==(const IterationRecord&) const = default;
};

struct PrecisionRecord {
    std::size_t iteration = 0;
    DeviceId device = 0;
    SpId sp = 0;
    double value = 1.0;

    bool operator==(const PrecisionRecord&) const = default;
};

struct MaeBlockRow {
    std::int64_t block_start_s = 0;
    double malicious_fraction = 0.0;
    double mae = 0.0;

    bool operator==(const MaeBlockRow&) const = default;
};

struct BenchRow {
    std::size_t n = 0;
    std::string kernel;
    double median_us = 0.0;

    bool operator==(const BenchRow&) const = default;
};

enum class SimEventKind { slot_close, trust_collection, service_request };

struct SimEvent {
    std::int64_t time_s = 0;
    SimEventKind kind = SimEventKind::service_request;
    std::size_t count = 0;

    bool operator==(const SimEvent&) const = default;
};

struct SimulationTrace {
    std::vector<IterationRecord> iterations;
    std::vector<PrecisionRecord> precision;
    std::vector<SimEvent> events;
    std::vector<MaeBlockRow> mae_blocks;  // filled for escalation runs
    std::vector<BenchRow> bench;          // filled by the clustering benchmark

    bool operator==(const SimulationTrace&) const = default;
};

namespace detail {

// Per-block MAE table, using the same block boundaries as the attacker
// escalation. MAE is averaged per provider over the block, then across
// providers.
inline std::vector<MaeBlockRow> mae_blocks_from(const std::vector<IterationRecord>& iterations,
                                                const AttackEscalation& escalation,
                                                std::size_t sp_count) {
    const std::int64_t block_len = escalation.block_seconds;
    const std::size_t n_blocks = escalation.fractions.size();
    std::vector<std::vector<double>> sums(n_blocks, std::vector<double>(sp_count, 0.0));
    std::vector<std::vector<std::size_t>> counts(n_blocks,
                                                 std::vector<std::size_t>(sp_count, 0));
    for (const IterationRecord& rec : iterations) {
        if (rec.time_s <= 0)
            continue;
        const std::size_t block = escalation.block_at(rec.time_s);
        sums[block][rec.sp] += std::abs(rec.domain_trust - rec.ground_truth);
        ++counts[block][rec.sp];
    }
    std::vector<MaeBlockRow> rows;
    rows.reserve(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        double sp_sum = 0.0;
        std::size_t sp_n = 0;
        for (std::size_t sp = 0; sp < sp_count; ++sp) {
            if (counts[b][sp] == 0)
                continue;
            sp_sum += sums[b][sp] / static_cast<double>(counts[b][sp]);
            ++sp_n;
        }
        rows.push_back({static_cast<std::int64_t>(b) * block_len, escalation.fractions[b],
                        sp_n ? sp_sum / static_cast<double>(sp_n) : 0.0});
    }
    return rows;
}

}  // namespace detail

// Runs one scenario to completion. The loop advances in whole seconds; at
// equal timestamps trust collection runs first, then slot closings, then
// service requests. Collecting before the close lets the window cover the
// full interval since the last trim, so a scheduled attacker's ON and OFF
// phases are sampled evenly no matter which phase its cycle starts with.
// The trace is a pure function of the config (seed included).
inline SimulationTrace run_scenario(const ScenarioConfig& config) {
    config.validate();

    const std::size_t n_dev = config.n_devices;
    const std::size_t n_sp = config.sp_behaviors.size();
    const std::int64_t slot_s = static_cast<std::int64_t>(config.window.slot_duration);

    std::vector<RaterBehavior> raters = config.rater_behaviors;
    if (raters.empty())
        raters.assign(n_dev, RaterBehavior::make_honest());

    const auto rater_at = [&](DeviceId dev, std::int64_t t) -> const RaterBehavior& {
        if (config.escalation && dev < config.escalation->attacker_count_at(t, n_dev))
            return config.escalation->attacker;
        return raters[dev];
    };

    std::vector<TrustWindow> windows(n_dev * n_sp, TrustWindow(config.window, 0.0));
    const auto window_of = [&](DeviceId dev, SpId sp) -> TrustWindow& {
        return windows[dev * n_sp + sp];
    };

    // Independent per-actor streams: one per (device, provider) pair for
    // service draws, one per device for report distortion. Draw counts are
    // then independent of the filtering toggle and of other actors.
    std::vector<Rng> service_rngs;
    service_rngs.reserve(n_dev * n_sp);
    for (DeviceId dev = 0; dev < n_dev; ++dev)
        for (SpId sp = 0; sp < n_sp; ++sp)
            service_rngs.emplace_back(mix_seed(config.seed, 0x5e, dev * n_sp + sp));
    std::vector<Rng> report_rngs;
    report_rngs.reserve(n_dev);
    for (DeviceId dev = 0; dev < n_dev; ++dev)
        report_rngs.emplace_back(mix_seed(config.seed, 0x8e, dev));

    PrecisionMatrix pt(n_sp, n_dev);
    std::vector<DomainTrustRecord> domain(n_sp);
    std::vector<double> truth(n_sp, kUncertainTrust);
    for (SpId sp = 0; sp < n_sp; ++sp)
        domain[sp] = {sp, kUncertainTrust, 0};

    SimulationTrace trace;
    for (SpId sp = 0; sp < n_sp; ++sp)
        trace.iterations.push_back({0, sp, kUncertainTrust, kUncertainTrust, 0, 0});

    std::vector<double> avg_precisions(n_dev, 1.0);
    std::vector<std::vector<double>> true_dt(n_sp, std::vector<double>(n_dev, 0.0));
    ClusterResult clusters;

    for (std::int64_t t = 1; t <= config.sim_duration_s; ++t) {
        if (t % config.domain_trust_interval_s == 0) {
            const std::size_t iteration =
                static_cast<std::size_t>(t / config.domain_trust_interval_s);

            // precision snapshot from the start of the iteration
            for (DeviceId dev = 0; dev < n_dev; ++dev)
                avg_precisions[dev] = pt.column_mean(dev);

            TrustMatrix tm(n_sp, n_dev);
            for (DeviceId dev = 0; dev < n_dev; ++dev) {
                const RaterBehavior& rater = rater_at(dev, t);
                for (SpId sp = 0; sp < n_sp; ++sp) {
                    true_dt[sp][dev] = direct_trust(window_of(dev, sp), config.trust).direct_trust;
                    tm.submit(sp, dev,
                              report_direct_trust(rater, true_dt[sp][dev],
                                                  static_cast<double>(t), report_rngs[dev]));
                }
            }

            for (SpId sp = 0; sp < n_sp; ++sp) {
                const std::vector<TrustReport> reports = tm.reports_for(sp);
                form_clusters(reports, avg_precisions, clusters);
                const std::vector<TrustReport> selected =
                    config.filtering_enabled ? select_ratings(clusters) : reports;
                domain[sp] = domain_trust_update(domain[sp], selected);

                double honest_sum = 0.0;
                std::size_t honest_n = 0;
                for (DeviceId dev = 0; dev < n_dev; ++dev) {
                    if (rater_at(dev, t).kind == RaterBehavior::Kind::honest) {
                        honest_sum += true_dt[sp][dev];
                        ++honest_n;
                    }
                }
                if (honest_n > 0)
                    truth[sp] = 0.5 * (truth[sp] + honest_sum / static_cast<double>(honest_n));

                update_precision(pt, clusters, sp);
                trace.iterations.push_back({t, sp, domain[sp].value, truth[sp], selected.size(),
                                            reports.size() - selected.size()});
            }

            for (DeviceId dev = 0; dev < n_dev; ++dev)
                for (SpId sp = 0; sp < n_sp; ++sp)
                    trace.precision.push_back({iteration, dev, sp, pt.at(sp, dev)});
            trace.events.push_back({t, SimEventKind::trust_collection, n_sp});
        }

        if (t % slot_s == 0) {
            for (TrustWindow& window : windows)
                window.close_slot_and_adjust(static_cast<double>(t));
            trace.events.push_back({t, SimEventKind::slot_close, windows.size()});
        }

        if (t % config.service_request_interval_s == 0) {
            for (DeviceId dev = 0; dev < n_dev; ++dev) {
                for (SpId sp = 0; sp < n_sp; ++sp) {
                    Rng& rng = service_rngs[dev * n_sp + sp];
                    const ServiceQuality quality =
                        sp_service_quality(config.sp_behaviors[sp], static_cast<double>(t), rng);
                    window_of(dev, sp).record_rating(
                        {rate_service(quality, rng), static_cast<double>(t)});
                }
            }
            trace.events.push_back({t, SimEventKind::service_request, n_dev * n_sp});
        }
    }

    if (config.escalation)
        trace.mae_blocks = detail::mae_blocks_from(trace.iterations, *config.escalation, n_sp);
    return trace;
}

// Runs one continuous simulation whose attacker share steps through the given
// fractions, one block each. The returned trace carries the per-block MAE
// table.
inline SimulationTrace sweep_malicious_fraction(ScenarioConfig base, RaterBehavior attacker,
                                                std::vector<double> fractions,
                                                std::int64_t block_seconds) {
    AttackEscalation escalation;
    escalation.attacker = attacker;
    escalation.block_seconds = block_seconds;
    escalation.fractions = std::move(fractions);
    base.escalation = std::move(escalation);
    base.sim_duration_s = block_seconds * static_cast<std::int64_t>(base.escalation->fractions.size());
    return run_scenario(base);
}

}  // namespace iotrust
