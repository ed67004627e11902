#include "sparsekey/channel_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sparsekey/numeric.hpp"

namespace sparsekey {

double ChannelConfig::rho() const {
    return std::pow(tau_w(), -(1.0 - delta));
}

double ChannelConfig::mean_dof() const {
    return std::pow(tau_w(), delta);
}

int ChannelConfig::bin_count() const {
    const double tw = tau_w();
    // Snap near-integer products first: 1e8 * 1e-5 lands a few ulp above
    // 1000 and must not ceil to 1001.
    const double nearest = std::round(tw);
    if (std::abs(tw - nearest) <= 1e-9 * std::max(1.0, nearest))
        return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(tw));
}

double ChannelConfig::eve_q0() const {
    const double r = rho();
    // Rich-channel limit: every bin is occupied, there is no off-support bin
    // for the eavesdropper to leak through, so the value is immaterial.
    if (r >= 1.0) return 0.0;
    return r * (1.0 - theta) / (1.0 - r);
}

void ChannelConfig::validate_ranges() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("ChannelConfig: " + msg); };
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) fail("bandwidth_hz must be positive");
    if (!(max_delay_s > 0.0) || !std::isfinite(max_delay_s)) fail("max_delay_s must be positive");
    if (!(tau_w() > 1.0)) fail("tau_m * W must exceed 1 (need at least one resolvable bin)");
    if (!(delta > 0.0) || delta > 1.0) fail("delta must lie in (0, 1]");
    if (theta < 0.0 || theta > 1.0) fail("theta must lie in [0, 1]");
    if (eta < 0.0 || eta > 1.0) fail("eta must lie in [0, 1]");
    if (!(snr_a > 0.0) || !(snr_b > 0.0) || !(snr_e > 0.0)) fail("SNRs must be positive");
    if (!(power > 0.0)) fail("power must be positive");
    const double r = rho();
    if (!(r > 0.0) || r > 1.0) fail("derived rho outside (0, 1]");
}

void ChannelConfig::validate() const {
    validate_ranges();
    auto fail = [](const std::string& msg) { throw std::invalid_argument("ChannelConfig: " + msg); };
    const double r = rho();
    if (r < 1.0) {
        const double q0 = eve_q0();
        if (q0 > 1.0) {
            std::ostringstream os;
            os << "eavesdropper transition probability q0 = " << q0
               << " exceeds 1 (rho too close to 1 for theta = " << theta << ")";
            fail(os.str());
        }
    }
}

nlohmann::json ChannelConfig::to_json() const {
    return nlohmann::json{
        {"bandwidth_hz", bandwidth_hz}, {"max_delay_s", max_delay_s}, {"delta", delta},
        {"theta", theta},               {"eta", eta},                 {"snr_a", snr_a},
        {"snr_b", snr_b},               {"snr_e", snr_e},             {"power", power},
    };
}

ChannelConfig ChannelConfig::from_json(const nlohmann::json& j) {
    ChannelConfig c;
    c.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    c.max_delay_s = j.at("max_delay_s").get<double>();
    c.delta = j.at("delta").get<double>();
    c.theta = j.at("theta").get<double>();
    c.eta = j.at("eta").get<double>();
    c.snr_a = j.at("snr_a").get<double>();
    c.snr_b = j.at("snr_b").get<double>();
    c.snr_e = j.at("snr_e").get<double>();
    c.power = j.at("power").get<double>();
    return c;
}

ChannelConfig ChannelConfig::from_kv(const std::map<std::string, std::string>& kv) {
    ChannelConfig c;
    auto get = [&kv](const char* key, double& out) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        try {
            out = std::stod(it->second);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("ChannelConfig: bad numeric value for ") + key);
        }
    };
    get("bandwidth_hz", c.bandwidth_hz);
    get("max_delay_s", c.max_delay_s);
    get("delta", c.delta);
    get("theta", c.theta);
    get("eta", c.eta);
    double snr = 0.0;
    get("snr", snr);
    if (snr > 0.0) c.snr_a = c.snr_b = c.snr_e = snr;
    get("snr_a", c.snr_a);
    get("snr_b", c.snr_b);
    get("snr_e", c.snr_e);
    get("power", c.power);
    return c;
}

double sparsity_probability(const ChannelConfig& cfg) {
    cfg.validate();
    return cfg.rho();
}

std::pair<double, double> eve_transitions(const ChannelConfig& cfg) {
    cfg.validate();
    return {cfg.theta, cfg.eve_q0()};
}

DofCounts sample_dof(const ChannelConfig& cfg, std::mt19937_64& rng) {
    const int m = cfg.bin_count();
    const int b_ab = sample_binomial(rng, m, cfg.rho());
    const int b_q = sample_binomial(rng, b_ab, cfg.theta);
    const int e0 = sample_binomial(rng, m - b_ab, cfg.eve_q0());
    return DofCounts{b_ab, b_q + e0, b_q};
}

DofPmf dof_pmf(const ChannelConfig& cfg, int m_cap) {
    cfg.validate();
    const int m = cfg.bin_count();
    if (m > m_cap) {
        std::ostringstream os;
        os << "dof_pmf: bin count " << m << " exceeds cap " << m_cap;
        throw std::invalid_argument(os.str());
    }
    const double rho = cfg.rho();
    const double theta = cfg.theta;
    const double q0 = cfg.eve_q0();

    DofPmf pmf;
    pmf.bins = m;
    for (int b = 0; b <= m; ++b) {
        const double pb = binom_pmf(b, m, rho);
        if (pb == 0.0) continue;
        for (int q = 0; q <= b; ++q) {
            const double pq = binom_pmf(q, b, theta);
            if (pq == 0.0) continue;
            for (int e0 = 0; e0 <= m - b; ++e0) {
                const double pe = binom_pmf(e0, m - b, q0);
                if (pe == 0.0) continue;
                pmf.cells.push_back({b, q, e0, pb * pq * pe});
            }
        }
    }
    return pmf;
}

double DofPmf::total_mass() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.p;
    return s;
}

std::vector<double> DofPmf::marginal_ab() const {
    std::vector<double> out(bins + 1, 0.0);
    for (const auto& c : cells) out[c.b_ab] += c.p;
    return out;
}

std::vector<double> DofPmf::marginal_e() const {
    std::vector<double> out(bins + 1, 0.0);
    for (const auto& c : cells) out[c.b_q + c.e0] += c.p;
    return out;
}

double DofPmf::mean_overlap() const {
    double s = 0.0;
    for (const auto& c : cells) s += c.p * c.b_q;
    return s;
}

double state_entropy_bonus(const ChannelConfig& cfg, long long n) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("state_entropy_bonus: n must be >= 1");
    const double rho = cfg.rho();
    const double q0 = cfg.eve_q0();
    const double p11 = rho * cfg.theta;
    const double p10 = rho * (1.0 - cfg.theta);
    const double p01 = (1.0 - rho) * q0;
    const double p00 = (1.0 - rho) * (1.0 - q0);
    const double h_joint = entropy_term(p11) + entropy_term(p10) + entropy_term(p01) + entropy_term(p00);
    const double pe_on = p11 + p01;
    const double h_eve = binary_entropy(pe_on);
    const double per_bin = std::max(0.0, h_joint - h_eve);
    return static_cast<double>(cfg.bin_count()) * per_bin / static_cast<double>(n);
}

}  // namespace sparsekey
