#include "sparsekey/outage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sparsekey/ergodic.hpp"
#include "sparsekey/numeric.hpp"

namespace sparsekey {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double conditional_capacity(const DofCounts& counts, double snr, double eta) {
    return inst_rate(counts, snr, eta);
}

double backoff_threshold(double alpha, double ratio_a, double theta) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("backoff_threshold: alpha must lie in (0, 1]");
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("backoff_threshold: theta must lie in [0, 1]");
    if (!(ratio_a >= 1.0)) throw std::invalid_argument("backoff_threshold: ratio A must be >= 1");
    if (alpha == 1.0) return theta;  // avoids 0 * inf when the ratio diverges
    return (1.0 - alpha) * ratio_a + alpha * theta;
}

BackoffSpec make_backoff(double alpha, double theta, double eta) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("make_backoff: eta must lie in [0, 1]");
    const double ratio = eta > 0.0 ? 1.0 / (eta * eta) : kInf;
    return make_backoff_ratio(alpha, theta, ratio);
}

BackoffSpec make_backoff_ratio(double alpha, double theta, double ratio_a) {
    BackoffSpec spec;
    spec.alpha = alpha;
    spec.theta = theta;
    spec.A = ratio_a;
    spec.a = backoff_threshold(alpha, ratio_a, theta);
    return spec;
}

double kl_bernoulli(double a, double p) {
    if (a < 0.0 || a > 1.0 || p < 0.0 || p > 1.0)
        throw std::invalid_argument("kl_bernoulli: arguments must lie in [0, 1]");
    if (a == p) return 0.0;
    if (p <= 0.0 || p >= 1.0) return kInf;
    double d = 0.0;
    if (a > 0.0) d += a * std::log2(a / p);
    if (a < 1.0) d += (1.0 - a) * std::log2((1.0 - a) / (1.0 - p));
    return d;
}

double outage_exact(int l, double theta, double a) {
    if (l < 1) throw std::invalid_argument("outage_exact: l must be >= 1");
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("outage_exact: theta must lie in [0, 1]");
    const double threshold = a * l;
    if (threshold > l) return 0.0;
    const int k0 = std::max(0, static_cast<int>(std::ceil(threshold)));
    if (k0 <= 0) return 1.0;
    std::vector<double> terms;
    terms.reserve(l - k0 + 1);
    for (int k = k0; k <= l; ++k) terms.push_back(log_binom_pmf(k, l, theta));
    const double ls = logsumexp(terms);
    return std::isinf(ls) ? 0.0 : std::min(1.0, std::exp(ls));
}

double outage_bound(int l, double theta, double a) {
    if (l < 1) throw std::invalid_argument("outage_bound: l must be >= 1");
    if (a >= 1.0) return 0.0;
    if (a <= theta) return 1.0;
    const double exponent = l * kl_bernoulli(a, theta);
    return std::min(1.0, std::exp2(-exponent));
}

double outage_exponent(double dof, double theta, double a) {
    if (!(dof > 0.0)) throw std::invalid_argument("outage_exponent: dof must be > 0");
    if (a >= 1.0) return kInf;
    if (a <= theta) return 0.0;
    return dof * kl_bernoulli(a, theta);
}

double gaussian_tail(int l, double theta, double a) {
    if (l < 1) throw std::invalid_argument("gaussian_tail: l must be >= 1");
    const double mean = l * theta;
    const double var = l * theta * (1.0 - theta);
    const double x = std::ceil(a * l) - 0.5;
    if (var <= 0.0) return x <= mean ? 1.0 : 0.0;
    return normal_sf((x - mean) / std::sqrt(var));
}

namespace {

McEstimate binomial_fraction(long hits, long samples) {
    McEstimate est;
    est.p = static_cast<double>(hits) / samples;
    est.std_err = std::sqrt(std::max(0.0, est.p * (1.0 - est.p) / samples));
    return est;
}

}  // namespace

McEstimate outage_mc(const ChannelConfig& cfg, double snr, double rate_bits, double lambda,
                     long samples, std::uint64_t seed) {
    cfg.validate();
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("outage_mc: lambda must lie in (0, 1]");
    if (samples < 1) throw std::invalid_argument("outage_mc: samples must be >= 1");
    auto rng = make_rng(seed);
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        const DofCounts counts = sample_dof(cfg, rng);
        if (rate_bits > lambda * conditional_capacity(counts, snr / lambda, cfg.eta)) ++hits;
    }
    return binomial_fraction(hits, samples);
}

McEstimate outage_mc_conditioned(int l, double theta, double snr, double rate_bits, double lambda,
                                 double eta, long samples, std::uint64_t seed) {
    if (l < 1) throw std::invalid_argument("outage_mc_conditioned: l must be >= 1");
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("outage_mc_conditioned: lambda must lie in (0, 1]");
    if (samples < 1) throw std::invalid_argument("outage_mc_conditioned: samples must be >= 1");
    auto rng = make_rng(seed);
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        DofCounts counts;
        counts.b_ab = l;
        counts.b_e = l;
        counts.b_q = sample_binomial(rng, l, theta);
        if (rate_bits > lambda * conditional_capacity(counts, snr / lambda, eta)) ++hits;
    }
    return binomial_fraction(hits, samples);
}

nlohmann::json OutageReport::to_json() const {
    nlohmann::json j{
        {"L", L},
        {"theta", theta},
        {"a", a},
        {"p_exact", p_exact},
        {"p_bound", p_bound},
        {"p_gauss", p_gauss},
        {"outage_impossible", outage_impossible},
    };
    // JSON has no inf literal; serialize the flagged regime explicitly.
    if (std::isinf(exponent))
        j["exponent"] = "inf";
    else
        j["exponent"] = exponent;
    if (has_mc) {
        j["p_mc"] = p_mc;
        j["p_mc_stderr"] = p_mc_stderr;
    }
    return j;
}

OutageReport make_outage_report(double dof, double theta, double a) {
    if (!(dof >= 1.0)) throw std::invalid_argument("make_outage_report: dof must be >= 1");
    OutageReport rep;
    rep.L = static_cast<int>(std::lround(dof));
    rep.theta = theta;
    rep.a = a;
    if (a >= 1.0) {
        rep.outage_impossible = true;
        rep.p_exact = 0.0;
        rep.p_bound = 0.0;
        rep.p_gauss = gaussian_tail(rep.L, theta, a);
        rep.exponent = kInf;
        return rep;
    }
    rep.p_exact = outage_exact(rep.L, theta, a);
    rep.p_bound = outage_bound(rep.L, theta, a);
    rep.p_gauss = gaussian_tail(rep.L, theta, a);
    rep.exponent = outage_exponent(dof, theta, a);
    return rep;
}

std::vector<ExponentPoint> exponent_curve(const ChannelConfig& cfg, double alpha,
                                          const std::vector<double>& w_grid, double ratio_a) {
    if (w_grid.empty()) throw std::invalid_argument("exponent_curve: empty grid");
    const BackoffSpec spec = ratio_a > 0.0 ? make_backoff_ratio(alpha, cfg.theta, ratio_a)
                                           : make_backoff(alpha, cfg.theta, cfg.eta);
    std::vector<ExponentPoint> out;
    out.reserve(w_grid.size());
    for (double w : w_grid) {
        ChannelConfig point_cfg = cfg;
        point_cfg.bandwidth_hz = w;
        point_cfg.validate_ranges();
        ExponentPoint pt;
        pt.bandwidth_hz = w;
        pt.dof = point_cfg.mean_dof();
        pt.exponent = outage_exponent(pt.dof, spec.theta, spec.a);
        out.push_back(pt);
    }
    return out;
}

}  // namespace sparsekey
