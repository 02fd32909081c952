#pragma once

#include <cmath>
#include <stdexcept>

#include "iotrust/rng.hpp"

namespace iotrust {

// Service outcomes as the requesting device observes them. Honest providers
// occasionally deliver late but within reason; attack-grade service is
// delayed far past the threshold.
enum class ServiceQuality { on_time, delayed, severely_delayed };

// Share of services an honestly-behaving provider delivers late, and the
// share a maliciously-behaving provider delays.
inline constexpr double kHonestDelayProb = 0.05;
inline constexpr double kMaliciousDelayProb = 0.95;

// Rating bands per outcome. On-time service lands in the trusted zone and
// attack-grade delays in the untrusted zone, so a 50/50 on-time/attack mix
// averages at the uncertain midpoint. An honest provider's rare mild delay
// rates in the uncertain middle: it is neither praise nor a low score, which
// keeps honest windows free of penalty hits.
inline constexpr double kOnTimeRatingMin = 0.8;
inline constexpr double kOnTimeRatingMax = 1.0;
inline constexpr double kMildDelayRatingMin = 0.4;
inline constexpr double kMildDelayRatingMax = 0.6;
inline constexpr double kSevereDelayRatingMin = 0.0;
inline constexpr double kSevereDelayRatingMax = 0.2;

// Dishonest report bands, chosen inside the outer grids so attacks are
// unambiguous to the clustering step.
inline constexpr double kBadMouthReportMin = 0.0;
inline constexpr double kBadMouthReportMax = 0.25;
inline constexpr double kBallotReportMin = 0.75;
inline constexpr double kBallotReportMax = 1.0;

// Alternating attack/normal phases anchored at t = 0.
struct OnOffSchedule {
    double on_seconds = 0.0;   // attack phase
    double off_seconds = 0.0;  // normal phase
    bool starts_on = true;

    double cycle_seconds() const { return on_seconds + off_seconds; }

    bool on_phase_at(double time) const {
        const double t = std::fmod(time, cycle_seconds());
        return starts_on ? t < on_seconds : t >= off_seconds;
    }

    bool operator==(const OnOffSchedule&) const = default;
};

struct SpBehavior {
    enum class Kind { honest, malicious, onoff_schedule, onoff_random };

    Kind kind = Kind::honest;
    OnOffSchedule schedule{};                   // onoff_schedule only
    double bad_fraction = kMaliciousDelayProb;  // ON-phase or per-service attack probability

    static SpBehavior make_honest() { return {}; }

    static SpBehavior make_malicious() {
        SpBehavior b;
        b.kind = Kind::malicious;
        return b;
    }

    static SpBehavior make_on_off(double on_seconds, double off_seconds, bool starts_on,
                                  double on_attack_prob = kMaliciousDelayProb) {
        SpBehavior b;
        b.kind = Kind::onoff_schedule;
        b.schedule = {on_seconds, off_seconds, starts_on};
        b.bad_fraction = on_attack_prob;
        return b;
    }

    static SpBehavior make_on_off_random(double fraction) {
        SpBehavior b;
        b.kind = Kind::onoff_random;
        b.bad_fraction = fraction;
        return b;
    }

    void validate() const {
        if (kind == Kind::onoff_schedule &&
            (schedule.on_seconds <= 0.0 || schedule.off_seconds <= 0.0))
            throw std::invalid_argument("SpBehavior: schedule periods must be > 0");
        if (bad_fraction < 0.0 || bad_fraction > 1.0)
            throw std::invalid_argument("SpBehavior: bad_fraction must be in [0, 1]");
    }

    bool operator==(const SpBehavior&) const = default;
};

// Service outcome for one request at the given simulated time. Honest
// behavior (including the OFF phase of a scheduled attacker) produces mild
// delays; attack behavior produces severe ones.
inline ServiceQuality sp_service_quality(const SpBehavior& sp, double time, Rng& rng) {
    switch (sp.kind) {
    case SpBehavior::Kind::honest:
        return rng.bernoulli(kHonestDelayProb) ? ServiceQuality::delayed
                                               : ServiceQuality::on_time;
    case SpBehavior::Kind::malicious:
        return rng.bernoulli(kMaliciousDelayProb) ? ServiceQuality::severely_delayed
                                                  : ServiceQuality::on_time;
    case SpBehavior::Kind::onoff_schedule:
        if (sp.schedule.on_phase_at(time))
            return rng.bernoulli(sp.bad_fraction) ? ServiceQuality::severely_delayed
                                                  : ServiceQuality::on_time;
        return rng.bernoulli(kHonestDelayProb) ? ServiceQuality::delayed
                                               : ServiceQuality::on_time;
    case SpBehavior::Kind::onoff_random:
        return rng.bernoulli(sp.bad_fraction) ? ServiceQuality::severely_delayed
                                              : ServiceQuality::on_time;
    }
    return ServiceQuality::on_time;
}

// Rating a device derives from the observed service delay.
inline double rate_service(ServiceQuality quality, Rng& rng) {
    switch (quality) {
    case ServiceQuality::on_time:
        return rng.uniform(kOnTimeRatingMin, kOnTimeRatingMax);
    case ServiceQuality::delayed:
        return rng.uniform(kMildDelayRatingMin, kMildDelayRatingMax);
    case ServiceQuality::severely_delayed:
        return rng.uniform(kSevereDelayRatingMin, kSevereDelayRatingMax);
    }
    return kOnTimeRatingMin;
}

struct RaterBehavior {
    enum class Kind { honest, bad_mouthing, ballot_stuffing, bad_mouthing_onoff };

    Kind kind = Kind::honest;
    double honest_seconds = 0.0;  // bad_mouthing_onoff cycle
    double attack_seconds = 0.0;

    static RaterBehavior make_honest() { return {}; }

    static RaterBehavior make_bad_mouthing() {
        RaterBehavior b;
        b.kind = Kind::bad_mouthing;
        return b;
    }

    static RaterBehavior make_ballot_stuffing() {
        RaterBehavior b;
        b.kind = Kind::ballot_stuffing;
        return b;
    }

    static RaterBehavior make_bad_mouthing_onoff(double honest_s, double attack_s) {
        RaterBehavior b;
        b.kind = Kind::bad_mouthing_onoff;
        b.honest_seconds = honest_s;
        b.attack_seconds = attack_s;
        return b;
    }

    bool attack_phase_at(double time) const {
        const double t = std::fmod(time, honest_seconds + attack_seconds);
        return t >= honest_seconds;
    }

    void validate() const {
        if (kind == Kind::bad_mouthing_onoff &&
            (honest_seconds <= 0.0 || attack_seconds <= 0.0))
            throw std::invalid_argument("RaterBehavior: cycle periods must be > 0");
    }

    bool operator==(const RaterBehavior&) const = default;
};

// The direct trust a device actually reports to the community server.
inline double report_direct_trust(const RaterBehavior& rater, double true_direct_trust,
                                  double time, Rng& rng) {
    switch (rater.kind) {
    case RaterBehavior::Kind::honest:
        return true_direct_trust;
    case RaterBehavior::Kind::bad_mouthing:
        return rng.uniform(kBadMouthReportMin, kBadMouthReportMax);
    case RaterBehavior::Kind::ballot_stuffing:
        return rng.uniform(kBallotReportMin, kBallotReportMax);
    case RaterBehavior::Kind::bad_mouthing_onoff:
        return rater.attack_phase_at(time)
                   ? rng.uniform(kBadMouthReportMin, kBadMouthReportMax)
                   : true_direct_trust;
    }
    return true_direct_trust;
}

}  // namespace iotrust
