#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sparsekey {

// A small discrete memoryless source triple (X, Y, Z) for one fixed state
// pair: Alice/Bob observe X/Y, the eavesdropper observes Z. Alphabets are
// capped at 4 symbols so block statistics stay exactly enumerable.
struct ToySource {
    int nx = 2;
    int ny = 2;
    int nz = 2;
    std::vector<double> joint;  // p(x, y, z), index (x*ny + y)*nz + z

    double p(int x, int y, int z) const { return joint[(static_cast<std::size_t>(x) * ny + y) * nz + z]; }
    void validate() const;  // sizes <= 4, normalized within 1e-12

    // True when p(x,y,z) = p(x,y) p(z|y) within tol: the eavesdropper's
    // output is a cascade of Bob's output and an extra channel.
    bool is_degraded(double tol = 1e-10) const;

    double entropy_x() const;
    double entropy_xy() const;
    double entropy_xz() const;
    double mi_xy() const;
    double mi_xz() const;
    double cond_entropy_x_given_y() const;

    // Uniform X, Y = X xor Bern(p1), Z = Y xor Bern(p2).
    static ToySource bsc_cascade(double p1, double p2);
    // Y = X noiselessly, Z a constant (blind eavesdropper).
    static ToySource noiseless_pair_blind_eve();
    // Z = Y = X: the eavesdropper sees everything.
    static ToySource fully_exposed();
    // CSV with columns x,y,z,p (header and '#' comments allowed).
    static ToySource from_csv(const std::string& path);
};

// I(X;Y) - I(X;Z) in bits.
double conditional_capacity_discrete(const ToySource& src);

// Slepian-Wolf style binning over blocks of n source symbols: every x^n gets
// an independent uniform key index and public index. Bob decodes by MAP over
// the announced public bin, ties to the lowest sequence index.
struct BinningScheme {
    int n = 1;
    int alphabet = 2;  // |X|
    double key_rate = 0.0;
    double public_rate = 0.0;
    int num_keys = 1;
    int num_bins = 1;
    std::vector<std::uint32_t> key_map;  // size |X|^n
    std::vector<std::uint32_t> bin_map;
    std::string decoder = "map-in-bin";
};

BinningScheme random_binning(int n, double key_rate, double public_rate, int alphabet,
                             std::uint64_t seed);

struct LeakageReport {
    int n = 1;
    double pe = 0.0;           // Pr(K != Khat)
    double pe_seq = 0.0;       // Pr(X^n != Xhat^n); key errors are a subset
    double key_entropy = 0.0;  // H(K)/n
    double leak = 0.0;         // I(K; Z^n, Phi)/n
    double leak_x = 0.0;       // I(X^n; Z^n, Phi)/n
    double residual = 0.0;     // H(X^n | Phi, Y^n)/n
    double cs = 0.0;           // I(X;Y) - I(X;Z)
    bool degraded = false;

    nlohmann::json to_json() const;
};

// Exact block statistics by summation over the product distribution. Throws
// when the enumeration would exceed the scale caps (n <= 10 binary).
LeakageReport evaluate_scheme(const BinningScheme& scheme, const ToySource& src);

// Checks the exact leakage lower bound
//   leak >= key_entropy - residual - cs
// which holds with equality slack >= 0 for every scheme on a degraded
// source. Returns (holds, slack); throws for non-degraded sources.
std::pair<bool, double> check_leakage_bound(const LeakageReport& report);

}  // namespace sparsekey
