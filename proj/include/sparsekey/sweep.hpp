#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sparsekey/channel_model.hpp"

namespace sparsekey {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log_scale = false;

    void validate() const;
    std::vector<double> values() const;
};

// Full description of one CLI run: channel, command, grid and the knobs the
// individual commands consume. Parses from (and serializes back to) a flat
// key=value listing, so a run can be reproduced from the header comment of
// any output file it wrote.
struct SweepConfig {
    ChannelConfig channel{1e8, 1e-5, 0.5, 0.5, 0.1, 1.0, 1.0, 1.0, 1.0};
    std::string command;
    GridSpec grid{0.0, 0.0, 0, false};
    std::vector<double> deltas;  // empty: use channel.delta
    double alpha = 0.9;
    double lambda = 1.0;
    long samples = 100000;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string method = "auto";  // exact | mc | approx | auto
    bool use_onoff = false;
    double mi_ratio = 0.0;  // outage ratio A; 0 selects 1/eta^2

    // leakage command
    int block_len = 4;
    int trials = 20;
    double key_rate = -1.0;     // < 0: cs + 0.25
    double public_rate = -1.0;  // < 0: H(X|Y) + 0.25
    double bsc_p1 = 0.1;
    double bsc_p2 = 0.2;
    std::string source_csv;

    // mi-oracle command
    int bins = 4;
    int sounding_len = 256;
    std::string sounding = "impulse";  // impulse | pn
    std::string sounding_csv;

    std::string out;
    std::string format = "csv";  // csv | json

    void validate() const;
    std::vector<std::pair<std::string, std::string>> to_kv() const;
    static SweepConfig from_kv(const std::map<std::string, std::string>& kv);
    static SweepConfig from_file(const std::string& path);
    bool operator==(const SweepConfig& other) const { return to_kv() == other.to_kv(); }
};

// Reads a flat key=value file ('#' comments and blank lines skipped).
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// Recovers the config echoed in the '# key=value' header of an output file.
SweepConfig parse_output_header(const std::string& path);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitRuntime = 2;

// Executes the configured command and writes cfg.out. Diagnostics and
// warnings go to `err`. Returns one of the kExit* codes.
int run_sweep(const SweepConfig& cfg, std::ostream& err);

}  // namespace sparsekey
