// Command-line front end: run scenarios, sweep attacker fractions, benchmark
// the clustering kernels, and replay the named convergence presets. Every
// subcommand writes the CSV bundle into --out.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iotrust/iotrust.hpp"

namespace {

void print_run_summary(const iotrust::ScenarioConfig& cfg,
                       const iotrust::SimulationTrace& trace,
                       const std::filesystem::path& out_dir) {
    std::cout << "scenario '" << cfg.name << "': " << cfg.n_devices << " devices, "
              << cfg.sp_behaviors.size()
              << (cfg.sp_behaviors.size() == 1 ? " provider, " : " providers, ")
              << cfg.sim_duration_s << " s, seed " << cfg.seed << "\n";
    for (std::size_t sp = 0; sp < cfg.sp_behaviors.size(); ++sp) {
        double last = iotrust::kUncertainTrust;
        for (const iotrust::IterationRecord& rec : trace.iterations)
            if (rec.sp == sp)
                last = rec.domain_trust;
        std::cout << "  sp " << sp << ": final domain trust "
                  << iotrust::format_double(last) << "\n";
    }
    for (const iotrust::MaeBlockRow& row : trace.mae_blocks)
        std::cout << "  block " << row.block_start_s << " s, fraction "
                  << iotrust::format_double(row.malicious_fraction) << ": mae "
                  << iotrust::format_double(row.mae) << "\n";
    std::cout << "wrote " << (out_dir / "domain_trust.csv").string() << "\n";
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
    std::vector<std::size_t> sizes;
    std::size_t begin = 0;
    while (begin <= spec.size()) {
        const std::size_t pos = spec.find(',', begin);
        const std::string part =
            spec.substr(begin, pos == std::string::npos ? std::string::npos : pos - begin);
        if (!part.empty())
            sizes.push_back(static_cast<std::size_t>(iotrust::parse_int(part)));
        if (pos == std::string::npos)
            break;
        begin = pos + 1;
    }
    if (sizes.empty())
        throw std::runtime_error("empty size list '" + spec + "'");
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IoT trust management engine: dynamic-window direct trust, "
                 "precision-filtered domain trust, and attack experiments"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;

    // run
    auto* run = app.add_subcommand("run", "run a scenario file");
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--seed", seed_override, "override the scenario seed");
    run->add_option("--out", out_dir, "output directory");

    // convergence
    auto* convergence = app.add_subcommand("convergence", "run a named preset");
    std::string preset_name;
    convergence->add_option("--preset", preset_name, "preset name")
        ->required()
        ->check(CLI::IsMember(iotrust::preset_names(), CLI::ignore_case));
    convergence->add_option("--seed", seed_override, "override the preset seed");
    convergence->add_option("--out", out_dir, "output directory");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "escalating attacker-share sweep");
    std::string attack = "badmouth";
    std::string fractions_spec = "0.1:0.6:0.1";
    std::int64_t block_seconds = 800;
    std::size_t devices = 50;
    std::size_t sps = 5;
    bool no_filtering = false;
    std::uint64_t sweep_seed = 1;
    sweep->add_option("--attack", attack, "attack kind")
        ->check(CLI::IsMember({"badmouth", "ballot"}));
    sweep->add_option("--fractions", fractions_spec, "start:end:step or comma list");
    sweep->add_option("--block-seconds", block_seconds, "seconds per fraction block");
    sweep->add_option("--devices", devices, "number of IoT devices");
    sweep->add_option("--sps", sps, "number of service providers");
    sweep->add_option("--seed", sweep_seed, "simulation seed");
    sweep->add_flag("--no-filtering", no_filtering, "accept every report");
    sweep->add_option("--out", out_dir, "output directory");

    // bench-cluster
    auto* bench = app.add_subcommand("bench-cluster", "time the clustering kernels");
    std::string sizes_spec = "150,300,600,1200";
    std::size_t reps = 20;
    std::uint64_t bench_seed = 42;
    bench->add_option("--sizes", sizes_spec, "comma-separated point counts");
    bench->add_option("--reps", reps, "repetitions per kernel");
    bench->add_option("--seed", bench_seed, "input generation seed");
    bench->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run || *convergence) {
            iotrust::ScenarioConfig cfg = *run
                                              ? iotrust::load_scenario_file(scenario_path)
                                              : iotrust::scenario_preset(preset_name);
            if (seed_override)
                cfg.seed = *seed_override;
            const iotrust::SimulationTrace trace = iotrust::run_scenario(cfg);
            iotrust::emit_trace(trace, out_dir);
            print_run_summary(cfg, trace, out_dir);
        } else if (*sweep) {
            iotrust::ScenarioConfig cfg;
            cfg.name = attack + "-sweep";
            cfg.n_devices = devices;
            cfg.seed = sweep_seed;
            cfg.filtering_enabled = !no_filtering;
            const bool badmouth = attack == "badmouth";
            cfg.sp_behaviors.assign(sps, badmouth ? iotrust::SpBehavior::make_honest()
                                                  : iotrust::SpBehavior::make_malicious());
            const iotrust::RaterBehavior attacker =
                badmouth ? iotrust::RaterBehavior::make_bad_mouthing()
                         : iotrust::RaterBehavior::make_ballot_stuffing();
            const iotrust::SimulationTrace trace = iotrust::sweep_malicious_fraction(
                cfg, attacker, iotrust::parse_fractions(fractions_spec), block_seconds);
            iotrust::emit_trace(trace, out_dir);
            cfg.sim_duration_s = block_seconds *
                                 static_cast<std::int64_t>(iotrust::parse_fractions(fractions_spec).size());
            print_run_summary(cfg, trace, out_dir);
        } else if (*bench) {
            iotrust::BenchConfig cfg;
            cfg.sizes = parse_sizes(sizes_spec);
            cfg.reps = reps;
            cfg.seed = bench_seed;
            iotrust::SimulationTrace trace;
            trace.bench = iotrust::bench_clustering(cfg);
            iotrust::emit_trace(trace, out_dir);
            for (const iotrust::BenchRow& row : trace.bench)
                std::cout << "n=" << row.n << " " << row.kernel << ": "
                          << iotrust::format_double(row.median_us) << " us\n";
            std::cout << "wrote " << (std::filesystem::path(out_dir) / "bench.csv").string()
                      << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
