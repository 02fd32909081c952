#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iotrust/csv.hpp"
#include "iotrust/sim.hpp"

namespace iotrust {

namespace detail {

inline std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    return std::string(text.substr(begin, end - begin));
}

inline std::string unquote(std::string text) {
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"')
        return text.substr(1, text.size() - 2);
    return text;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t pos = text.find(sep, begin);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(begin));
            return parts;
        }
        parts.emplace_back(text.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

inline std::string lower(std::string text) {
    for (char& ch : text)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return text;
}

// "30on-70off" -> schedule with the starting phase listed first.
inline OnOffSchedule parse_on_off_phases(const std::string& token) {
    const std::vector<std::string> parts = split(token, '-');
    if (parts.size() != 2)
        throw std::runtime_error("bad on-off spec '" + token + "' (want e.g. 30on-70off)");
    double seconds[2] = {0.0, 0.0};
    bool is_on[2] = {false, false};
    for (int i = 0; i < 2; ++i) {
        const std::string part = trim(parts[static_cast<std::size_t>(i)]);
        std::size_t digits = 0;
        while (digits < part.size() &&
               (std::isdigit(static_cast<unsigned char>(part[digits])) || part[digits] == '.'))
            ++digits;
        if (digits == 0)
            throw std::runtime_error("bad on-off spec '" + token + "'");
        seconds[i] = parse_double(part.substr(0, digits));
        const std::string phase = lower(part.substr(digits));
        if (phase == "on")
            is_on[i] = true;
        else if (phase == "off")
            is_on[i] = false;
        else
            throw std::runtime_error("bad on-off phase '" + phase + "' in '" + token + "'");
    }
    if (is_on[0] == is_on[1])
        throw std::runtime_error("on-off spec '" + token + "' needs one on and one off phase");
    OnOffSchedule schedule;
    schedule.starts_on = is_on[0];
    schedule.on_seconds = is_on[0] ? seconds[0] : seconds[1];
    schedule.off_seconds = is_on[0] ? seconds[1] : seconds[0];
    return schedule;
}

inline SpBehavior parse_sp(const std::string& token) {
    const std::vector<std::string> parts = split(token, ':');
    const std::string kind = lower(trim(parts[0]));
    if (kind == "honest" && parts.size() == 1)
        return SpBehavior::make_honest();
    if (kind == "malicious" && parts.size() == 1)
        return SpBehavior::make_malicious();
    if (kind == "onoff-random" && parts.size() == 2)
        return SpBehavior::make_on_off_random(parse_double(trim(parts[1])));
    if (kind == "onoff" && (parts.size() == 2 || parts.size() == 3)) {
        const OnOffSchedule schedule = parse_on_off_phases(trim(parts[1]));
        const double on_delay_prob =
            parts.size() == 3 ? parse_double(trim(parts[2])) : kMaliciousDelayProb;
        return SpBehavior::make_on_off(schedule.on_seconds, schedule.off_seconds,
                                       schedule.starts_on, on_delay_prob);
    }
    throw std::runtime_error("unknown sp behavior '" + token + "'");
}

// "25h-25a" -> honest seconds, attack seconds.
inline void parse_rater_cycle(const std::string& token, RaterBehavior& rater) {
    const std::vector<std::string> parts = split(token, '-');
    if (parts.size() != 2)
        throw std::runtime_error("bad rater cycle '" + token + "' (want e.g. 25h-25a)");
    for (const std::string& raw : parts) {
        const std::string part = trim(raw);
        std::size_t digits = 0;
        while (digits < part.size() &&
               (std::isdigit(static_cast<unsigned char>(part[digits])) || part[digits] == '.'))
            ++digits;
        const std::string phase = lower(part.substr(digits));
        if (digits == 0 || (phase != "h" && phase != "a"))
            throw std::runtime_error("bad rater cycle '" + token + "'");
        if (phase == "h")
            rater.honest_seconds = parse_double(part.substr(0, digits));
        else
            rater.attack_seconds = parse_double(part.substr(0, digits));
    }
}

inline RaterBehavior parse_rater(const std::string& token) {
    const std::vector<std::string> parts = split(token, ':');
    const std::string kind = lower(trim(parts[0]));
    if (kind == "honest" && parts.size() == 1)
        return RaterBehavior::make_honest();
    if (kind == "badmouth" && parts.size() == 1)
        return RaterBehavior::make_bad_mouthing();
    if (kind == "ballot" && parts.size() == 1)
        return RaterBehavior::make_ballot_stuffing();
    if (kind == "badmouth-onoff" && parts.size() == 2) {
        RaterBehavior rater = RaterBehavior::make_bad_mouthing_onoff(0.0, 0.0);
        parse_rater_cycle(trim(parts[1]), rater);
        return rater;
    }
    throw std::runtime_error("unknown rater behavior '" + token + "'");
}

}  // namespace detail

// "0.1:0.6:0.1" (start:end:step, inclusive) or a comma list "0.1,0.2,...".
inline std::vector<double> parse_fractions(const std::string& spec) {
    std::vector<double> fractions;
    if (spec.find(':') != std::string::npos) {
        const std::vector<std::string> parts = detail::split(spec, ':');
        if (parts.size() != 3)
            throw std::runtime_error("bad fraction range '" + spec + "' (want start:end:step)");
        const double start = parse_double(detail::trim(parts[0]));
        const double end = parse_double(detail::trim(parts[1]));
        const double step = parse_double(detail::trim(parts[2]));
        if (step <= 0.0 || end < start)
            throw std::runtime_error("bad fraction range '" + spec + "'");
        const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
            fractions.push_back(start + static_cast<double>(i) * step);
    } else {
        for (const std::string& part : detail::split(spec, ','))
            fractions.push_back(parse_double(detail::trim(part)));
    }
    if (fractions.empty())
        throw std::runtime_error("empty fraction list '" + spec + "'");
    return fractions;
}

// Key = value scenario text. '#' starts a comment; sp and rater lines repeat
// and expand in order; unlisted devices default to honest raters.
inline ScenarioConfig parse_scenario(std::istream& in, std::string default_name = "scenario") {
    ScenarioConfig cfg;
    cfg.name = std::move(default_name);
    cfg.sp_behaviors.clear();
    std::vector<RaterBehavior> raters;
    RaterBehavior escalation_attacker;
    bool has_escalation = false;
    std::int64_t escalation_block_s = 800;
    std::vector<double> escalation_fractions;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const std::string text = detail::trim(line);
        if (text.empty())
            continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("scenario line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = detail::lower(detail::trim(text.substr(0, eq)));
        const std::string value = detail::unquote(detail::trim(text.substr(eq + 1)));

        try {
            if (key == "name") {
                cfg.name = value;
            } else if (key == "n_devices") {
                cfg.n_devices = static_cast<std::size_t>(parse_int(value));
            } else if (key == "service_request_interval_s") {
                cfg.service_request_interval_s = parse_int(value);
            } else if (key == "slot_duration_s") {
                cfg.window.slot_duration = parse_double(value);
            } else if (key == "domain_trust_interval_s") {
                cfg.domain_trust_interval_s = parse_int(value);
            } else if (key == "sim_duration_s") {
                cfg.sim_duration_s = parse_int(value);
            } else if (key == "max_rating") {
                cfg.window.max_rating = static_cast<std::size_t>(parse_int(value));
            } else if (key == "min_rating") {
                cfg.window.min_rating = static_cast<std::size_t>(parse_int(value));
            } else if (key == "beta") {
                cfg.trust.beta = parse_double(value);
            } else if (key == "reward_exp") {
                cfg.trust.reward_exp = parse_double(value);
            } else if (key == "penalty_exp") {
                cfg.trust.penalty_exp = parse_double(value);
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(parse_int(value));
            } else if (key == "filtering") {
                const std::string v = detail::lower(value);
                if (v != "on" && v != "off")
                    throw std::runtime_error("filtering must be on or off");
                cfg.filtering_enabled = v == "on";
            } else if (key == "sp") {
                cfg.sp_behaviors.push_back(detail::parse_sp(value));
            } else if (key == "rater") {
                const std::vector<std::string> parts = detail::split(value, '*');
                if (parts.size() > 2)
                    throw std::runtime_error("bad rater line '" + value + "'");
                const RaterBehavior rater = detail::parse_rater(detail::trim(parts[0]));
                const std::int64_t count =
                    parts.size() == 2 ? parse_int(detail::trim(parts[1])) : 1;
                if (count < 1)
                    throw std::runtime_error("rater count must be >= 1");
                raters.insert(raters.end(), static_cast<std::size_t>(count), rater);
            } else if (key == "escalate_attack") {
                escalation_attacker = detail::parse_rater(value);
                has_escalation = true;
            } else if (key == "escalate_block_s") {
                escalation_block_s = parse_int(value);
            } else if (key == "escalate_fractions") {
                escalation_fractions = parse_fractions(value);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::exception& ex) {
            throw std::runtime_error("scenario line " + std::to_string(line_no) + ": " +
                                     ex.what());
        }
    }

    if (!raters.empty()) {
        if (raters.size() > cfg.n_devices)
            throw std::runtime_error("scenario declares more raters than devices");
        raters.resize(cfg.n_devices, RaterBehavior::make_honest());
        cfg.rater_behaviors = std::move(raters);
    }
    if (has_escalation) {
        AttackEscalation escalation;
        escalation.attacker = escalation_attacker;
        escalation.block_seconds = escalation_block_s;
        escalation.fractions = std::move(escalation_fractions);
        if (escalation.fractions.empty())
            throw std::runtime_error("escalate_attack needs escalate_fractions");
        cfg.escalation = std::move(escalation);
    }
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file " + path.string());
    return parse_scenario(in, path.stem().string());
}

inline std::vector<std::string> preset_names() {
    return {"honest", "malicious", "A1", "A1p", "A2", "A2p",  "A3",
            "A3p",    "A4",        "A4p", "A5", "A5p", "B1",  "B2",
            "mixed",  "mixed-onoff", "badmouth-sweep", "ballot-sweep"};
}

// Built-in scenarios at desk scale: 50 devices, the Table-style defaults
// (20 s slots, 100 s collection interval, 20/5 rating bounds, beta 7,
// r 1.5, e 0.25), seed 1.
inline ScenarioConfig scenario_preset(std::string_view name) {
    const std::string key = detail::lower(std::string(name));
    ScenarioConfig cfg;
    cfg.name = key;

    const auto on_off_case = [&](double on_s, double off_s, bool starts_on) {
        cfg.sp_behaviors = {SpBehavior::make_on_off(on_s, off_s, starts_on)};
        return cfg;
    };

    if (key == "honest") {
        cfg.sp_behaviors = {SpBehavior::make_honest()};
        return cfg;
    }
    if (key == "malicious") {
        cfg.sp_behaviors = {SpBehavior::make_malicious()};
        return cfg;
    }
    if (key == "a1")
        return on_off_case(30, 70, true);
    if (key == "a1p")
        return on_off_case(30, 70, false);
    if (key == "a2")
        return on_off_case(40, 60, true);
    if (key == "a2p")
        return on_off_case(40, 60, false);
    if (key == "a3")
        return on_off_case(50, 50, true);
    if (key == "a3p")
        return on_off_case(50, 50, false);
    if (key == "a4")
        return on_off_case(60, 40, true);
    if (key == "a4p")
        return on_off_case(60, 40, false);
    if (key == "a5")
        return on_off_case(70, 30, true);
    if (key == "a5p")
        return on_off_case(70, 30, false);
    if (key == "b1" || key == "b2") {
        cfg.sp_behaviors = {SpBehavior::make_on_off_random(0.5)};
        cfg.service_request_interval_s = key == "b1" ? 150 : 300;
        cfg.sim_duration_s = 5000;
        return cfg;
    }
    if (key == "mixed") {
        cfg.sp_behaviors = {SpBehavior::make_honest(), SpBehavior::make_malicious(),
                            SpBehavior::make_on_off_random(0.5)};
        cfg.rater_behaviors.assign(40, RaterBehavior::make_honest());
        cfg.rater_behaviors.insert(cfg.rater_behaviors.end(), 5,
                                   RaterBehavior::make_bad_mouthing());
        cfg.rater_behaviors.insert(cfg.rater_behaviors.end(), 5,
                                   RaterBehavior::make_ballot_stuffing());
        return cfg;
    }
    if (key == "mixed-onoff") {
        cfg.sp_behaviors = {SpBehavior::make_honest(), SpBehavior::make_malicious(),
                            SpBehavior::make_on_off(75, 25, false, 0.5)};
        cfg.rater_behaviors.assign(40, RaterBehavior::make_honest());
        cfg.rater_behaviors.insert(cfg.rater_behaviors.end(), 10,
                                   RaterBehavior::make_bad_mouthing_onoff(25, 25));
        return cfg;
    }
    if (key == "badmouth-sweep" || key == "ballot-sweep") {
        const bool badmouth = key == "badmouth-sweep";
        cfg.sp_behaviors.assign(5, badmouth ? SpBehavior::make_honest()
                                            : SpBehavior::make_malicious());
        AttackEscalation escalation;
        escalation.attacker = badmouth ? RaterBehavior::make_bad_mouthing()
                                       : RaterBehavior::make_ballot_stuffing();
        escalation.block_seconds = 800;
        for (int i = 1; i <= 6; ++i)
            escalation.fractions.push_back(static_cast<double>(i) / 10.0);
        cfg.escalation = std::move(escalation);
        cfg.sim_duration_s = 4800;
        return cfg;
    }
    throw std::runtime_error("unknown preset '" + std::string(name) + "'");
}

}  // namespace iotrust
