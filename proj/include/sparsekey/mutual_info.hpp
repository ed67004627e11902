#pragma once

#include <cstdint>
#include <vector>

namespace sparsekey {

// Scalar mutual-information kernels for one delay bin, in bits.
//
// i_ab is the information Alice and Bob share about a common Gaussian
// coefficient observed at SNRs ga and gb; i_ae is what the eavesdropper
// learns about Alice's observation when her coefficient has correlation
// magnitude eta with the main one.
double i_ab(double ga, double gb);
double i_ae(double ga, double ge, double eta);

// Low-SNR expansions: x^2/ln2 and eta^2*x*y/ln2.
double i_ab_lowsnr(double x);
double i_ae_lowsnr(double x, double y, double eta);

// True when the eavesdropper's effective SNR on a common-support bin is
// strictly below Bob's:
//   var_h*P/nvar_b  >  eta^2*var_he*P / ((1-eta^2)*var_he*P + nvar_e).
bool is_eve_degraded(double var_h, double var_he, double power, double nvar_b, double nvar_e,
                     double eta);

// Per-bin variances and supports for the vector channel. var_h[l] > 0 iff
// s_ab[l] = 1 (same for the eavesdropper's profile), and each nonempty
// profile carries unit total power.
struct PowerProfile {
    std::vector<double> var_h;
    std::vector<double> var_he;
    std::vector<std::uint8_t> s_ab;
    std::vector<std::uint8_t> s_e;

    std::size_t bins() const { return s_ab.size(); }
    void validate() const;

    // Uniform profiles 1/|s_ab| and 1/|s_e| on the given supports.
    static PowerProfile uniform(const std::vector<std::uint8_t>& s_ab,
                                const std::vector<std::uint8_t>& s_e);
};

struct MiPair {
    double i_xy = 0.0;
    double i_xz = 0.0;
};

// Closed-form vector mutual information under white sounding:
//   i_xy = sum_l s_ab[l] * i_ab(var_h[l]*ga, var_h[l]*gb)
//   i_xz = sum_l s_ab[l]*s_e[l] * i_ae(var_h[l]*ga, var_he[l]*ge, eta)
MiPair vector_mi_closed_form(const PowerProfile& profile, double ga, double gb, double ge,
                             double eta);

}  // namespace sparsekey
