#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sparsekey/mutual_info.hpp"

using namespace sparsekey;

TEST_SUITE("mutual_info") {

TEST_CASE("i_ab: frozen values, symmetry, zero at the origin") {
    CHECK(i_ab(0.0, 0.0) == doctest::Approx(0.0));
    CHECK(i_ab(1.0, 1.0) == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-12));
    CHECK(i_ab(1.0, 1.0) == doctest::Approx(0.415037499279).epsilon(1e-10));
    CHECK(i_ab(0.5, 0.5) == doctest::Approx(std::log2(1.125)).epsilon(1e-12));
    CHECK(i_ab(0.5, 0.5) == doctest::Approx(0.169925001442).epsilon(1e-10));
    CHECK(i_ab(0.3, 1.7) == doctest::Approx(i_ab(1.7, 0.3)).epsilon(1e-14));
    CHECK_THROWS_AS(i_ab(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("i_ae: frozen value and eta edge cases") {
    CHECK(i_ae(3.0, 5.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    // Perfect correlation makes the eavesdropper equivalent to Bob.
    for (double g : {0.1, 1.0, 7.5})
        CHECK(i_ae(g, g, 1.0) == doctest::Approx(i_ab(g, g)).epsilon(1e-13));
    CHECK(i_ae(0.5, 0.5, 0.5) == doctest::Approx(0.0406419844973).epsilon(1e-10));
    CHECK_THROWS_AS(i_ae(1.0, 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(i_ae(1.0, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("kernel dominance and monotonicity on a grid") {
    const double grid[] = {0.0, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0};
    for (double eta : {0.0, 0.3, 0.7, 0.99}) {
        for (double g : grid) {
            CHECK(i_ab(g, g) >= i_ae(g, g, eta) - 1e-14);
            if (g > 0.0) CHECK(i_ab(g, g) > i_ae(g, g, eta));
        }
    }
    double prev_ab = -1.0, prev_ae = -1.0;
    for (double g : grid) {
        const double ab = i_ab(g, 0.7);
        const double ae = i_ae(g, 0.7, 0.6);
        CHECK(ab >= prev_ab);
        CHECK(ae >= prev_ae);
        CHECK(ab >= 0.0);
        CHECK(ae >= 0.0);
        prev_ab = ab;
        prev_ae = ae;
    }
}

TEST_CASE("low-SNR approximations stay within 2.5% at x = 0.01") {
    CHECK(i_ab_lowsnr(0.0) == doctest::Approx(0.0));
    CHECK(i_ae_lowsnr(0.01, 0.01, 0.0) == doctest::Approx(0.0));

    const double x = 0.01;
    CHECK(i_ab_lowsnr(x) == doctest::Approx(1.44269504089e-4).epsilon(1e-9));
    const double rel_ab = std::abs(i_ab_lowsnr(x) - i_ab(x, x)) / i_ab(x, x);
    CHECK(rel_ab <= 0.025);
    CHECK(rel_ab == doctest::Approx(0.0200).epsilon(0.05));

    for (double eta : {0.1, 0.3, 0.5, 0.9, 1.0}) {
        const double exact = i_ae(x, x, eta);
        const double approx = i_ae_lowsnr(x, x, eta);
        CHECK(std::abs(approx - exact) / exact <= 0.025);
    }
}

TEST_CASE("degradedness test") {
    // eta = 0: the eavesdropper's effective SNR is zero.
    CHECK(is_eve_degraded(0.5, 0.5, 1.0, 1.0, 1.0, 0.0));
    // eta = 1 with identical variance and noise: equality, not strict.
    CHECK_FALSE(is_eve_degraded(0.5, 0.5, 1.0, 1.0, 1.0, 1.0));
    // Bob at 0.5 vs the eavesdropper at 0.125/1.375.
    CHECK(is_eve_degraded(0.5, 0.5, 1.0, 1.0, 1.0, 0.5));
    // Strong correlation and a much quieter receiver flips it.
    CHECK_FALSE(is_eve_degraded(0.5, 0.5, 0.01, 1.0, 1e-6, 0.99));
}

TEST_CASE("uniform profile construction and validation") {
    const PowerProfile p = PowerProfile::uniform({1, 0, 1, 1}, {1, 1, 0, 1});
    CHECK(p.var_h[0] == doctest::Approx(1.0 / 3));
    CHECK(p.var_h[1] == 0.0);
    CHECK(p.var_he[1] == doctest::Approx(1.0 / 3));
    CHECK_NOTHROW(p.validate());

    PowerProfile bad = p;
    bad.var_h[1] = 0.5;  // power on an empty bin
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    PowerProfile unnormalized = p;
    unnormalized.var_h[0] = 0.9;
    CHECK_THROWS_AS(unnormalized.validate(), std::invalid_argument);
}

TEST_CASE("vector mutual information closed form") {
    // Empty pattern: nothing to learn anywhere.
    PowerProfile empty;
    empty.s_ab = {0, 0};
    empty.s_e = {0, 0};
    empty.var_h = {0.0, 0.0};
    empty.var_he = {0.0, 0.0};
    const MiPair zero = vector_mi_closed_form(empty, 1.0, 1.0, 1.0, 0.5);
    CHECK(zero.i_xy == doctest::Approx(0.0));
    CHECK(zero.i_xz == doctest::Approx(0.0));

    // Two uniform bins, no eavesdropper overlap.
    PowerProfile two;
    two.s_ab = {1, 1};
    two.s_e = {0, 0};
    two.var_h = {0.5, 0.5};
    two.var_he = {0.0, 0.0};
    const MiPair no_eve = vector_mi_closed_form(two, 1.0, 1.0, 1.0, 0.5);
    CHECK(no_eve.i_xy == doctest::Approx(0.339850002885).epsilon(1e-10));
    CHECK(no_eve.i_xz == doctest::Approx(0.0));

    // Same with the eavesdropper present on both bins.
    two.s_e = {1, 1};
    two.var_he = {0.5, 0.5};
    const MiPair with_eve = vector_mi_closed_form(two, 1.0, 1.0, 1.0, 0.5);
    CHECK(with_eve.i_xy == doctest::Approx(0.339850002885).epsilon(1e-10));
    CHECK(with_eve.i_xz == doctest::Approx(0.0812839689947).epsilon(1e-10));
}

}  // TEST_SUITE
