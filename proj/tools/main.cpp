#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sparsekey/sweep.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "sparsekey: secret-key rate, secrecy-outage and leakage sweeps for sparse "
        "reciprocal wireless channels"};

    std::string config_path;
    std::string command, out, format;
    std::uint64_t seed = 0;
    long samples = 0;

    app.add_option("--config", config_path, "flat key=value config file")->required();
    app.add_option("--command", command,
                   "override: ergodic-snr | ergodic-bandwidth | outage-exponent | outage-mc | "
                   "leakage | mi-oracle | degraded-check");
    auto* seed_opt = app.add_option("--seed", seed, "override the RNG seed");
    auto* samples_opt = app.add_option("--samples", samples, "override the Monte Carlo sample count");
    app.add_option("--out", out, "override the output path");
    app.add_option("--format", format, "override the output format (csv | json)");

    CLI11_PARSE(app, argc, argv);

    sparsekey::SweepConfig cfg;
    try {
        cfg = sparsekey::SweepConfig::from_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sparsekey::kExitInvalidConfig;
    }
    if (!command.empty()) cfg.command = command;
    if (*seed_opt) {
        cfg.seed = seed;
        cfg.has_seed = true;
    }
    if (*samples_opt) cfg.samples = samples;
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) cfg.format = format;

    return sparsekey::run_sweep(cfg, std::cerr);
}
