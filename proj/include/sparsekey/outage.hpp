#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sparsekey/channel_model.hpp"

namespace sparsekey {

// Conditional secret-key capacity for a fixed state; identical to the
// instantaneous rate of the ergodic module.
double conditional_capacity(const DofCounts& counts, double snr, double eta);

// Backoff threshold a = (1-alpha)*A + alpha*theta for the event
// {overlap count >= a*L}. A is the per-bin mutual-information ratio
// (wideband limit 1/eta^2), and is >= 1 whenever eta < 1.
double backoff_threshold(double alpha, double ratio_a, double theta);

struct BackoffSpec {
    double alpha = 1.0;
    double A = 1.0;
    double theta = 0.0;
    double a = 0.0;
};

// Wideband spec with A = 1/eta^2; alpha = 1 pins a = theta even when eta = 0.
BackoffSpec make_backoff(double alpha, double theta, double eta);
BackoffSpec make_backoff_ratio(double alpha, double theta, double ratio_a);

// Kullback-Leibler divergence D(a||p) between Bernoulli laws, in bits.
// Returns +inf when p is degenerate and a differs from it.
double kl_bernoulli(double a, double p);

// Pr(Bin(l, theta) >= ceil(a*l)), summed in log space. 1 when a <= 0 and 0
// when a*l > l.
double outage_exact(int l, double theta, double a);

// Chernoff bound 2^{-l*D(a||theta)} clamped to [0,1]; 1 for a <= theta and 0
// for a >= 1 (the outage-impossible regime).
double outage_bound(int l, double theta, double a);

// l*D(a||theta) with real-valued l; +inf for a >= 1, 0 for a <= theta.
double outage_exponent(double dof, double theta, double a);

// Continuity-corrected normal approximation of the same tail: survival of
// N(l*theta, l*theta*(1-theta)) at ceil(a*l) - 0.5.
double gaussian_tail(int l, double theta, double a);

struct McEstimate {
    double p = 0.0;
    double std_err = 0.0;
};

// Fraction of unconditioned pattern draws whose scaled conditional capacity
// lambda * Cs(counts, snr/lambda) falls below rate_bits.
McEstimate outage_mc(const ChannelConfig& cfg, double snr, double rate_bits, double lambda,
                     long samples, std::uint64_t seed);

// Same criterion with the pattern weights pinned to b_ab = b_e = l and only
// the overlap b_q ~ Bin(l, theta) random.
McEstimate outage_mc_conditioned(int l, double theta, double snr, double rate_bits, double lambda,
                                 double eta, long samples, std::uint64_t seed);

struct OutageReport {
    int L = 0;
    double theta = 0.0;
    double a = 0.0;
    double p_exact = 0.0;
    double p_bound = 0.0;
    double p_gauss = 0.0;
    double exponent = 0.0;
    double p_mc = 0.0;
    double p_mc_stderr = 0.0;
    bool has_mc = false;
    bool outage_impossible = false;  // a >= 1

    nlohmann::json to_json() const;
};

// Tail probabilities and exponent for mean DoF `dof`: integer L = round(dof)
// for the exact/bound/gaussian tails, real dof inside the exponent. a >= 1 is
// reported as outage-impossible (zero tails, infinite exponent).
OutageReport make_outage_report(double dof, double theta, double a);

struct ExponentPoint {
    double bandwidth_hz = 0.0;
    double dof = 0.0;       // (tau_m*W)^delta, real-valued
    double exponent = 0.0;  // dof * D(a||theta); +inf when a >= 1
};

// Exponent versus bandwidth at fixed backoff. ratio_a = 0 selects the
// wideband ratio 1/eta^2.
std::vector<ExponentPoint> exponent_curve(const ChannelConfig& cfg, double alpha,
                                          const std::vector<double>& w_grid, double ratio_a = 0.0);

}  // namespace sparsekey
