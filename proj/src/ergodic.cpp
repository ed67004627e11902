#include "sparsekey/ergodic.hpp"

#include <cmath>
#include <stdexcept>

#include "sparsekey/mutual_info.hpp"
#include "sparsekey/numeric.hpp"

namespace sparsekey {

const char* to_string(RateMethod m) {
    switch (m) {
        case RateMethod::exact: return "exact";
        case RateMethod::mc: return "mc";
        case RateMethod::approx: return "approx";
    }
    return "?";
}

double inst_rate(const DofCounts& counts, double snr, double eta) {
    if (counts.b_ab < 0 || counts.b_e < 0 || counts.b_q < 0 ||
        counts.b_q > counts.b_ab || counts.b_q > counts.b_e)
        throw std::invalid_argument("inst_rate: inconsistent pattern weights");
    if (snr < 0.0) throw std::invalid_argument("inst_rate: snr must be >= 0");
    if (counts.b_ab == 0) return 0.0;
    const double ga = snr / counts.b_ab;
    double rate = counts.b_ab * i_ab(ga, ga);
    if (counts.b_q > 0) rate -= counts.b_q * i_ae(ga, snr / counts.b_e, eta);
    return rate;
}

ExactErgodic::ExactErgodic(const ChannelConfig& cfg, int m_cap) {
    cfg.validate();
    bins_ = cfg.bin_count();
    if (bins_ > m_cap)
        throw std::invalid_argument("ExactErgodic: bin count exceeds the exact-enumeration cap");
    eta_ = cfg.eta;
    const double rho = cfg.rho();
    const double theta = cfg.theta;
    const double q0 = cfg.eve_q0();
    const int m = bins_;

    p_ab_.assign(m + 1, 0.0);
    leak_w_.assign(static_cast<std::size_t>(m + 1) * (m + 1), 0.0);
    for (int b = 0; b <= m; ++b) {
        const double pb = binom_pmf(b, m, rho);
        p_ab_[b] = pb;
        if (pb == 0.0 || b == 0) continue;
        // E[b_q; b_e = q + e0 | b_ab = b], folded over the overlap count q and
        // the off-support count e0; this weight is SNR-independent.
        for (int q = 1; q <= b; ++q) {
            const double pq = q * binom_pmf(q, b, theta);
            if (pq == 0.0) continue;
            for (int e0 = 0; e0 <= m - b; ++e0) {
                const double pe = binom_pmf(e0, m - b, q0);
                if (pe == 0.0) continue;
                leak_w_[static_cast<std::size_t>(b) * (m + 1) + (q + e0)] += pb * pq * pe;
            }
        }
    }
}

double ExactErgodic::rate(double snr) const {
    const int m = bins_;
    double acc = 0.0;
    for (int b = 1; b <= m; ++b) {
        if (p_ab_[b] == 0.0) continue;
        const double ga = snr / b;
        acc += p_ab_[b] * b * i_ab(ga, ga);
        for (int be = 1; be <= m; ++be) {
            const double w = leak_w_[static_cast<std::size_t>(b) * (m + 1) + be];
            if (w == 0.0) continue;
            acc -= w * i_ae(ga, snr / be, eta_);
        }
    }
    return acc;
}

RatePoint ergodic_rate(const ChannelConfig& cfg, double snr, RateMethod method, long samples,
                       std::uint64_t seed) {
    cfg.validate();
    RatePoint pt;
    pt.snr = snr;
    pt.bandwidth_hz = cfg.bandwidth_hz;
    pt.method = method;
    switch (method) {
        case RateMethod::exact: {
            ExactErgodic eval(cfg);
            pt.rate_bits = eval.rate(snr);
            break;
        }
        case RateMethod::mc: {
            if (samples < 1) throw std::invalid_argument("ergodic_rate: mc needs samples >= 1");
            auto rng = make_rng(seed);
            double sum = 0.0, sum_sq = 0.0;
            for (long i = 0; i < samples; ++i) {
                const double r = inst_rate(sample_dof(cfg, rng), snr, cfg.eta);
                sum += r;
                sum_sq += r * r;
            }
            const double mean = sum / samples;
            const double var = std::max(0.0, sum_sq / samples - mean * mean);
            pt.rate_bits = mean;
            pt.mc_stderr = std::sqrt(var / samples);
            break;
        }
        case RateMethod::approx:
            pt.rate_bits = wideband_approx(cfg, snr);
            break;
    }
    return pt;
}

OnOffResult onoff_optimize(double snr, const std::function<double(double)>& rate_fn,
                           int grid_points, double lambda_floor) {
    if (grid_points < 2) throw std::invalid_argument("onoff_optimize: need grid_points >= 2");
    if (!(lambda_floor > 0.0) || lambda_floor >= 1.0)
        throw std::invalid_argument("onoff_optimize: lambda_floor must lie in (0, 1)");

    auto objective = [&](double lam) { return lam * rate_fn(snr / lam); };

    // Logarithmic grid over (lambda_floor, 1]; the optimum collapses toward 0
    // at low SNR, so uniform spacing in log lambda is the right resolution.
    std::vector<double> grid(grid_points);
    const double step = std::log(1.0 / lambda_floor) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) grid[i] = lambda_floor * std::exp(step * i);
    grid.back() = 1.0;

    int best = 0;
    double best_val = objective(grid[0]);
    for (int i = 1; i < grid_points; ++i) {
        const double v = objective(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement on the bracket around the best grid point.
    double lo = grid[best > 0 ? best - 1 : 0];
    double hi = grid[best + 1 < grid_points ? best + 1 : grid_points - 1];
    if (hi > lo) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - gr * (hi - lo);
        double x2 = lo + gr * (hi - lo);
        double f1 = objective(x1);
        double f2 = objective(x2);
        for (int it = 0; it < 80 && (hi - lo) > 1e-12; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = objective(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = objective(x1);
            }
        }
        const double mid = 0.5 * (lo + hi);
        const double fm = objective(mid);
        if (fm > best_val) {
            best_val = fm;
            grid[best] = mid;
        }
    }

    OnOffResult res;
    res.grid_points = grid_points;
    res.rate_bits = best_val;
    res.lambda_star = grid[best];
    // Prefer full-time sounding when time sharing buys nothing.
    const double full = objective(1.0);
    if (full >= best_val - 1e-12 * std::max(1.0, std::abs(best_val))) {
        res.rate_bits = std::max(best_val, full);
        res.lambda_star = 1.0;
    }
    return res;
}

OnOffResult onoff_optimize(const ChannelConfig& cfg, double snr, RateMethod method, long samples,
                           std::uint64_t seed) {
    cfg.validate();
    if (method == RateMethod::exact) {
        ExactErgodic eval(cfg);
        return onoff_optimize(snr, [&](double g) { return eval.rate(g); });
    }
    const std::uint64_t sub = substream_seed(seed, 0x6f6e6f66ULL);
    return onoff_optimize(
        snr, [&](double g) { return ergodic_rate(cfg, g, method, samples, sub).rate_bits; });
}

double wideband_approx(const ChannelConfig& cfg, double snr) {
    cfg.validate();
    return snr * snr * (1.0 - cfg.theta * cfg.eta * cfg.eta) / (kLn2 * cfg.mean_dof());
}

std::vector<RatePoint> sweep(ChannelConfig cfg, SweepAxis axis, const std::vector<double>& grid,
                             bool use_onoff, std::optional<RateMethod> method, long samples,
                             std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<RatePoint> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ChannelConfig point_cfg = cfg;
        double snr = cfg.snr_a;
        switch (axis) {
            case SweepAxis::snr: snr = grid[i]; break;
            case SweepAxis::bandwidth: point_cfg.bandwidth_hz = grid[i]; break;
            case SweepAxis::delta: point_cfg.delta = grid[i]; break;
        }
        point_cfg.validate();
        const RateMethod m =
            method.value_or(point_cfg.bin_count() <= 128 ? RateMethod::exact : RateMethod::mc);
        const std::uint64_t sub = substream_seed(seed, i);
        RatePoint pt;
        if (use_onoff) {
            const OnOffResult oo = onoff_optimize(point_cfg, snr, m, samples, sub);
            pt.snr = snr;
            pt.bandwidth_hz = point_cfg.bandwidth_hz;
            pt.rate_bits = oo.rate_bits;
            pt.method = m;
        } else {
            pt = ergodic_rate(point_cfg, snr, m, samples, sub);
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace sparsekey
