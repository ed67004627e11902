#include "sparsekey/mutual_info.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparsekey/numeric.hpp"

namespace sparsekey {

double i_ab(double ga, double gb) {
    if (ga < 0.0 || gb < 0.0) throw std::invalid_argument("i_ab: SNR arguments must be >= 0");
    // log1p keeps precision for the tiny per-bin SNRs of the wideband regime.
    return (std::log1p(ga) + std::log1p(gb) - std::log1p(ga + gb)) / kLn2;
}

double i_ae(double ga, double ge, double eta) {
    if (ga < 0.0 || ge < 0.0) throw std::invalid_argument("i_ae: SNR arguments must be >= 0");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("i_ae: eta must lie in [0, 1]");
    const double cross = ga * ge * (1.0 - eta * eta);
    return (std::log1p(ga) + std::log1p(ge) - std::log1p(cross + ga + ge)) / kLn2;
}

double i_ab_lowsnr(double x) {
    return x * x / kLn2;
}

double i_ae_lowsnr(double x, double y, double eta) {
    return eta * eta * x * y / kLn2;
}

bool is_eve_degraded(double var_h, double var_he, double power, double nvar_b, double nvar_e,
                     double eta) {
    const double bob_snr = var_h * power / nvar_b;
    const double eve_snr =
        eta * eta * var_he * power / ((1.0 - eta * eta) * var_he * power + nvar_e);
    return bob_snr > eve_snr;
}

void PowerProfile::validate() const {
    const std::size_t n = s_ab.size();
    if (var_h.size() != n || var_he.size() != n || s_e.size() != n)
        throw std::invalid_argument("PowerProfile: field lengths differ");
    double sum_h = 0.0, sum_he = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        if ((var_h[l] > 0.0) != (s_ab[l] != 0))
            throw std::invalid_argument("PowerProfile: var_h support does not match s_ab");
        if ((var_he[l] > 0.0) != (s_e[l] != 0))
            throw std::invalid_argument("PowerProfile: var_he support does not match s_e");
        if (var_h[l] < 0.0 || var_he[l] < 0.0)
            throw std::invalid_argument("PowerProfile: variances must be >= 0");
        sum_h += var_h[l];
        sum_he += var_he[l];
    }
    // Unit channel power on each nonempty profile; an all-zero pattern is
    // allowed and carries no power.
    if (sum_h > 0.0 && std::abs(sum_h - 1.0) > 1e-9)
        throw std::invalid_argument("PowerProfile: main profile power must sum to 1");
    if (sum_he > 0.0 && std::abs(sum_he - 1.0) > 1e-9)
        throw std::invalid_argument("PowerProfile: eavesdropper profile power must sum to 1");
}

PowerProfile PowerProfile::uniform(const std::vector<std::uint8_t>& s_ab,
                                   const std::vector<std::uint8_t>& s_e) {
    if (s_ab.size() != s_e.size())
        throw std::invalid_argument("PowerProfile::uniform: pattern lengths differ");
    PowerProfile p;
    p.s_ab = s_ab;
    p.s_e = s_e;
    const double n_ab = std::accumulate(s_ab.begin(), s_ab.end(), 0.0);
    const double n_e = std::accumulate(s_e.begin(), s_e.end(), 0.0);
    p.var_h.resize(s_ab.size(), 0.0);
    p.var_he.resize(s_ab.size(), 0.0);
    for (std::size_t l = 0; l < s_ab.size(); ++l) {
        if (s_ab[l]) p.var_h[l] = 1.0 / n_ab;
        if (s_e[l]) p.var_he[l] = 1.0 / n_e;
    }
    return p;
}

MiPair vector_mi_closed_form(const PowerProfile& profile, double ga, double gb, double ge,
                             double eta) {
    profile.validate();
    MiPair mi;
    for (std::size_t l = 0; l < profile.bins(); ++l) {
        if (!profile.s_ab[l]) continue;
        mi.i_xy += i_ab(profile.var_h[l] * ga, profile.var_h[l] * gb);
        if (profile.s_e[l]) mi.i_xz += i_ae(profile.var_h[l] * ga, profile.var_he[l] * ge, eta);
    }
    return mi;
}

}  // namespace sparsekey
