#pragma once

// Random vector-channel instances shared by the oracle unit tests and the
// acceptance suite.

#include <cstdint>
#include <random>

#include "sparsekey/mutual_info.hpp"
#include "sparsekey/numeric.hpp"

namespace sparsekey::testing {

struct RandomMiCase {
    PowerProfile profile;
    double power = 1.0;
    double nvar_a = 1.0;
    double nvar_b = 1.0;
    double nvar_e = 1.0;
    double eta = 0.0;
};

inline RandomMiCase random_mi_case(std::mt19937_64& rng, int max_bins = 8) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> bin_dist(1, max_bins);
    RandomMiCase c;
    const int m = bin_dist(rng);
    c.profile.s_ab.resize(m);
    c.profile.s_e.resize(m);
    c.profile.var_h.assign(m, 0.0);
    c.profile.var_he.assign(m, 0.0);
    double sum_h = 0.0, sum_he = 0.0;
    for (int l = 0; l < m; ++l) {
        c.profile.s_ab[l] = unif(rng) < 0.6 ? 1 : 0;
        c.profile.s_e[l] = unif(rng) < 0.6 ? 1 : 0;
        if (c.profile.s_ab[l]) sum_h += c.profile.var_h[l] = 0.2 + unif(rng);
        if (c.profile.s_e[l]) sum_he += c.profile.var_he[l] = 0.2 + unif(rng);
    }
    for (int l = 0; l < m; ++l) {
        if (sum_h > 0.0) c.profile.var_h[l] /= sum_h;
        if (sum_he > 0.0) c.profile.var_he[l] /= sum_he;
    }
    c.power = 0.5 + 1.5 * unif(rng);
    c.nvar_a = 0.5 + 1.5 * unif(rng);
    c.nvar_b = 0.5 + 1.5 * unif(rng);
    c.nvar_e = 0.5 + 1.5 * unif(rng);
    c.eta = unif(rng);
    return c;
}

}  // namespace sparsekey::testing
