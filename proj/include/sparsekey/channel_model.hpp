#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sparsekey {

// Physical and statistical parameters of the sparse reciprocal channel and
// the correlated eavesdropper observing it.
//
// The delay axis is split into bin_count() = ceil(W*tau_m) resolvable bins.
// Each main-channel bin is occupied independently with probability rho(),
// chosen so the mean occupied count tracks the sub-linear law
// mean_dof() = (W*tau_m)^delta.  An occupied bin is visible to the
// eavesdropper with probability theta; an unoccupied bin leaks with
// probability eve_q0(), fixed so her marginal occupancy matches rho().
struct ChannelConfig {
    double bandwidth_hz = 0.0;  // W
    double max_delay_s = 0.0;   // tau_m
    double delta = 0.0;         // sparsity exponent, (0, 1]
    double theta = 0.0;         // overlap probability on occupied bins
    double eta = 0.0;           // coefficient correlation magnitude, [0, 1]
    double snr_a = 1.0;         // linear SNR P/N at Alice
    double snr_b = 1.0;
    double snr_e = 1.0;
    double power = 1.0;         // sounding power P

    double tau_w() const { return bandwidth_hz * max_delay_s; }
    double rho() const;       // (tau_w)^{-(1-delta)}
    double mean_dof() const;  // (tau_w)^{delta}
    int bin_count() const;    // ceil(tau_w)
    double eve_q0() const;    // rho(1-theta)/(1-rho); 0 in the rho = 1 limit

    // Throws std::invalid_argument when any parameter is out of range or the
    // implied eavesdropper transition probability exceeds 1.
    void validate() const;
    // Parameter ranges only, without the q0 <= 1 constraint. Enough for the
    // closed-form tail/exponent paths, which never sample the joint pattern:
    // the published exponent figures sit in (theta, delta) regions where the
    // sampling model itself would be rejected.
    void validate_ranges() const;

    nlohmann::json to_json() const;
    static ChannelConfig from_json(const nlohmann::json& j);
    // Reads the channel fields from a flat key=value map (unknown keys are
    // ignored; "snr" is accepted as shorthand for snr_a = snr_b = snr_e).
    static ChannelConfig from_kv(const std::map<std::string, std::string>& kv);
};

// One realization of the pattern weights: |S_ab|, |S_e| and the overlap.
struct DofCounts {
    int b_ab = 0;
    int b_e = 0;
    int b_q = 0;
};

// Exact joint distribution of (b_ab, b_q, e0) where e0 = b_e - b_q is the
// number of bins the eavesdropper sees outside the main-channel support.
struct DofPmf {
    struct Cell {
        int b_ab;
        int b_q;
        int e0;
        double p;
    };

    int bins = 0;
    std::vector<Cell> cells;

    double total_mass() const;
    std::vector<double> marginal_ab() const;  // size bins+1
    std::vector<double> marginal_e() const;
    double mean_overlap() const;  // E[b_q]
};

double sparsity_probability(const ChannelConfig& cfg);

// Returns (theta, q0), rejecting configurations where q0 would exceed 1.
std::pair<double, double> eve_transitions(const ChannelConfig& cfg);

// Draws (b_ab, b_e, b_q):
//   b_ab ~ Bin(M, rho),  b_q | b_ab ~ Bin(b_ab, theta),
//   b_e = b_q + Bin(M - b_ab, q0).
DofCounts sample_dof(const ChannelConfig& cfg, std::mt19937_64& rng);

// Exact factorized pmf; throws when bin_count() exceeds m_cap.
DofPmf dof_pmf(const ChannelConfig& cfg, int m_cap = 128);

// (M/n) * H(S_ab | S_e) in bits per observation: the key-rate contribution of
// the pattern itself, which vanishes as the pattern coherence length n grows.
double state_entropy_bonus(const ChannelConfig& cfg, long long n);

}  // namespace sparsekey
