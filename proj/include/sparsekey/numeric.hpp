#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace sparsekey {

inline constexpr double kLn2 = 0.6931471805599453;

// -p*log2(p), with the 0*log(0)=0 convention.
inline double entropy_term(double p) {
    return p > 0.0 ? -p * std::log2(p) : 0.0;
}

inline double binary_entropy(double p) {
    return entropy_term(p) + entropy_term(1.0 - p);
}

// log of Binomial(n, p) pmf at k, in nats. Handles p in {0, 1}.
inline double log_binom_pmf(int k, int n, double p) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (k < 0 || k > n) return ninf;
    if (p <= 0.0) return k == 0 ? 0.0 : ninf;
    if (p >= 1.0) return k == n ? 0.0 : ninf;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           k * std::log(p) + (n - k) * std::log1p(-p);
}

inline double binom_pmf(int k, int n, double p) {
    const double lp = log_binom_pmf(k, n, p);
    return std::isinf(lp) ? 0.0 : std::exp(lp);
}

inline double logsumexp(const std::vector<double>& xs) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    double m = ninf;
    for (double x : xs) m = std::max(m, x);
    if (std::isinf(m)) return ninf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Standard normal survival function.
inline double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from (seed, a, b); used so that grid
// points and MC chunks get reproducible streams regardless of scheduling.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

// Binomial draw with explicit edge handling for p in {0, 1} and n = 0.
inline int sample_binomial(std::mt19937_64& rng, int n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    std::binomial_distribution<int> dist(n, p);
    return dist(rng);
}

}  // namespace sparsekey
