#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sparsekey/channel_model.hpp"

namespace sparsekey {

enum class RateMethod { exact, mc, approx };

const char* to_string(RateMethod m);

struct RatePoint {
    double snr = 0.0;
    double bandwidth_hz = 0.0;
    double rate_bits = 0.0;
    RateMethod method = RateMethod::exact;
    double mc_stderr = 0.0;
};

// Instantaneous key rate for fixed pattern weights under uniform profiles:
//   b_ab * i_ab(g/b_ab, g/b_ab) - b_q * i_ae(g/b_ab, g/b_e, eta),
// with b_ab = 0 giving 0 and b_q = 0 dropping the leakage term.
double inst_rate(const DofCounts& counts, double snr, double eta);

// Caches the pattern-weight distribution of a config so the exact ergodic
// rate can be evaluated repeatedly (e.g. inside the on-off search) at
// O(M^2) kernel evaluations per SNR instead of O(M^3).
class ExactErgodic {
  public:
    explicit ExactErgodic(const ChannelConfig& cfg, int m_cap = 128);
    double rate(double snr) const;
    int bins() const { return bins_; }

  private:
    int bins_ = 0;
    double eta_ = 0.0;
    std::vector<double> p_ab_;    // P(b_ab = b)
    std::vector<double> leak_w_;  // (M+1)x(M+1): E[b_q; b_e = be, b_ab = b]
};

// E[inst_rate] over the pattern distribution. method = exact enumerates the
// joint pmf (bin count <= 128); mc averages `samples` draws and reports the
// standard error; approx returns the wideband closed form.
RatePoint ergodic_rate(const ChannelConfig& cfg, double snr, RateMethod method = RateMethod::exact,
                       long samples = 100000, std::uint64_t seed = 0);

struct OnOffResult {
    double lambda_star = 1.0;
    double rate_bits = 0.0;
    int grid_points = 0;
};

// Maximizes lambda * rate_fn(snr/lambda) over lambda in (0, 1]: logarithmic
// grid down to lambda_floor, then golden-section refinement around the best
// bracket. Ties (within 1e-12 relative) prefer lambda = 1.
OnOffResult onoff_optimize(double snr, const std::function<double(double)>& rate_fn,
                           int grid_points = 200, double lambda_floor = 1e-4);

// Convenience wrapper evaluating rate_fn through ergodic_rate. MC evaluations
// reuse one substream per optimizer call (common random numbers) so the
// search sees a deterministic function.
OnOffResult onoff_optimize(const ChannelConfig& cfg, double snr,
                           RateMethod method = RateMethod::exact, long samples = 100000,
                           std::uint64_t seed = 0);

// Wideband closed form: snr^2 * (1 - theta*eta^2) / (ln2 * (tau_m*W)^delta).
double wideband_approx(const ChannelConfig& cfg, double snr);

enum class SweepAxis { snr, bandwidth, delta };

// One RatePoint per grid value. Points not on the snr axis are evaluated at
// cfg.snr_a (the equal-SNR model). method = nullopt picks exact whenever the
// bin count allows it and mc otherwise; each point draws its own substream
// from (seed, index).
std::vector<RatePoint> sweep(ChannelConfig cfg, SweepAxis axis, const std::vector<double>& grid,
                             bool use_onoff = false,
                             std::optional<RateMethod> method = std::nullopt,
                             long samples = 100000, std::uint64_t seed = 0);

}  // namespace sparsekey
