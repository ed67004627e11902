#include "sparsekey/leakage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sparsekey/numeric.hpp"

namespace sparsekey {

namespace {

constexpr std::size_t kMaxSequences = std::size_t(1) << 20;
constexpr std::size_t kMaxPairTable = std::size_t(1) << 22;
constexpr std::size_t kMaxIndexTable = std::size_t(1) << 24;

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) v *= static_cast<std::size_t>(base);
    return v;
}

// Product-distribution weights over sequence pairs: out[a_seq*nb^n + b_seq] =
// prod_i p_sym(a_i, b_i), sequences read as base-na / base-nb numbers.
std::vector<double> sequence_pair_weights(const std::vector<double>& p_sym, int na, int nb,
                                          int n) {
    std::vector<double> cur{1.0};
    std::size_t ca = 1, cb = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<double> next(ca * na * cb * nb);
        for (std::size_t pa = 0; pa < ca; ++pa)
            for (int a = 0; a < na; ++a)
                for (std::size_t pb = 0; pb < cb; ++pb) {
                    const double base = cur[pa * cb + pb];
                    const std::size_t row = (pa * na + a) * cb * nb + pb * nb;
                    for (int b = 0; b < nb; ++b) next[row + b] = base * p_sym[a * nb + b];
                }
        cur = std::move(next);
        ca *= na;
        cb *= nb;
    }
    return cur;
}

double table_entropy(const std::vector<double>& t) {
    double h = 0.0;
    for (double p : t) h += entropy_term(p);
    return h;
}

}  // namespace

void ToySource::validate() const {
    if (nx < 1 || ny < 1 || nz < 1 || nx > 4 || ny > 4 || nz > 4)
        throw std::invalid_argument("ToySource: alphabet sizes must lie in [1, 4]");
    if (joint.size() != static_cast<std::size_t>(nx) * ny * nz)
        throw std::invalid_argument("ToySource: joint table size mismatch");
    double mass = 0.0;
    for (double v : joint) {
        if (v < 0.0) throw std::invalid_argument("ToySource: negative probability");
        mass += v;
    }
    if (std::abs(mass - 1.0) > 1e-12)
        throw std::invalid_argument("ToySource: joint table is not normalized");
}

bool ToySource::is_degraded(double tol) const {
    // X independent of Z given Y: p(x,y,z) p(y) = p(x,y) p(y,z).
    std::vector<double> py(ny, 0.0), pxy(static_cast<std::size_t>(nx) * ny, 0.0),
        pyz(static_cast<std::size_t>(ny) * nz, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) {
                const double v = p(x, y, z);
                py[y] += v;
                pxy[x * ny + y] += v;
                pyz[y * nz + z] += v;
            }
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z)
                if (std::abs(p(x, y, z) * py[y] - pxy[x * ny + y] * pyz[y * nz + z]) > tol)
                    return false;
    return true;
}

double ToySource::entropy_x() const {
    std::vector<double> px(nx, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) px[x] += p(x, y, z);
    return table_entropy(px);
}

double ToySource::entropy_xy() const {
    std::vector<double> pxy(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) pxy[x * ny + y] += p(x, y, z);
    return table_entropy(pxy);
}

double ToySource::entropy_xz() const {
    std::vector<double> pxz(static_cast<std::size_t>(nx) * nz, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) pxz[x * nz + z] += p(x, y, z);
    return table_entropy(pxz);
}

double ToySource::mi_xy() const {
    std::vector<double> py(ny, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) py[y] += p(x, y, z);
    return entropy_x() + table_entropy(py) - entropy_xy();
}

double ToySource::mi_xz() const {
    std::vector<double> pz(nz, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) pz[z] += p(x, y, z);
    return entropy_x() + table_entropy(pz) - entropy_xz();
}

double ToySource::cond_entropy_x_given_y() const {
    std::vector<double> py(ny, 0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int z = 0; z < nz; ++z) py[y] += p(x, y, z);
    return entropy_xy() - table_entropy(py);
}

ToySource ToySource::bsc_cascade(double p1, double p2) {
    if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0)
        throw std::invalid_argument("bsc_cascade: crossover probabilities must lie in [0, 1]");
    ToySource s;
    s.nx = s.ny = s.nz = 2;
    s.joint.assign(8, 0.0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const double pyx = (y == x) ? 1.0 - p1 : p1;
                const double pzy = (z == y) ? 1.0 - p2 : p2;
                s.joint[(x * 2 + y) * 2 + z] = 0.5 * pyx * pzy;
            }
    return s;
}

ToySource ToySource::noiseless_pair_blind_eve() {
    ToySource s;
    s.nx = s.ny = 2;
    s.nz = 1;
    s.joint.assign(4, 0.0);
    s.joint[(0 * 2 + 0) * 1] = 0.5;
    s.joint[(1 * 2 + 1) * 1] = 0.5;
    return s;
}

ToySource ToySource::fully_exposed() {
    ToySource s;
    s.nx = s.ny = s.nz = 2;
    s.joint.assign(8, 0.0);
    s.joint[(0 * 2 + 0) * 2 + 0] = 0.5;
    s.joint[(1 * 2 + 1) * 2 + 1] = 0.5;
    return s;
}

ToySource ToySource::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ToySource::from_csv: cannot open " + path);
    std::vector<std::array<double, 4>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double x, y, z, pv;
        if (!(row >> x >> y >> z >> pv)) continue;  // skips a header line
        rows.push_back({x, y, z, pv});
    }
    if (rows.empty()) throw std::runtime_error("ToySource::from_csv: no rows in " + path);
    ToySource s;
    s.nx = s.ny = s.nz = 1;
    for (const auto& r : rows) {
        s.nx = std::max(s.nx, static_cast<int>(r[0]) + 1);
        s.ny = std::max(s.ny, static_cast<int>(r[1]) + 1);
        s.nz = std::max(s.nz, static_cast<int>(r[2]) + 1);
    }
    if (s.nx > 4 || s.ny > 4 || s.nz > 4)
        throw std::runtime_error("ToySource::from_csv: alphabet larger than 4");
    s.joint.assign(static_cast<std::size_t>(s.nx) * s.ny * s.nz, 0.0);
    for (const auto& r : rows)
        s.joint[(static_cast<std::size_t>(r[0]) * s.ny + static_cast<std::size_t>(r[1])) * s.nz +
                static_cast<std::size_t>(r[2])] += r[3];
    s.validate();
    return s;
}

double conditional_capacity_discrete(const ToySource& src) {
    src.validate();
    return src.mi_xy() - src.mi_xz();
}

BinningScheme random_binning(int n, double key_rate, double public_rate, int alphabet,
                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_binning: n must be >= 1");
    if (alphabet < 1 || alphabet > 4)
        throw std::invalid_argument("random_binning: alphabet must lie in [1, 4]");
    if (key_rate < 0.0 || public_rate < 0.0)
        throw std::invalid_argument("random_binning: rates must be >= 0");
    const std::size_t n_seq = ipow(alphabet, n);
    if (n_seq > kMaxSequences) throw std::invalid_argument("random_binning: block too large");

    BinningScheme s;
    s.n = n;
    s.alphabet = alphabet;
    s.key_rate = key_rate;
    s.public_rate = public_rate;
    s.num_keys = static_cast<int>(std::ceil(std::exp2(n * key_rate)));
    s.num_bins = static_cast<int>(std::ceil(std::exp2(n * public_rate)));
    s.key_map.resize(n_seq);
    s.bin_map.resize(n_seq);
    auto rng = make_rng(seed);
    std::uniform_int_distribution<std::uint32_t> key_dist(0, s.num_keys - 1);
    std::uniform_int_distribution<std::uint32_t> bin_dist(0, s.num_bins - 1);
    for (std::size_t i = 0; i < n_seq; ++i) {
        s.key_map[i] = key_dist(rng);
        s.bin_map[i] = bin_dist(rng);
    }
    return s;
}

nlohmann::json LeakageReport::to_json() const {
    return nlohmann::json{
        {"n", n},           {"pe", pe},     {"pe_seq", pe_seq},     {"key_entropy", key_entropy},
        {"leak", leak},     {"leak_x", leak_x}, {"residual", residual}, {"cs", cs},
        {"degraded", degraded},
    };
}

LeakageReport evaluate_scheme(const BinningScheme& scheme, const ToySource& src) {
    src.validate();
    if (scheme.alphabet != src.nx)
        throw std::invalid_argument("evaluate_scheme: scheme alphabet does not match source");
    const int n = scheme.n;
    const std::size_t n_x = ipow(src.nx, n);
    const std::size_t n_y = ipow(src.ny, n);
    const std::size_t n_z = ipow(src.nz, n);
    const std::size_t n_k = static_cast<std::size_t>(scheme.num_keys);
    const std::size_t n_b = static_cast<std::size_t>(scheme.num_bins);
    if (scheme.key_map.size() != n_x || scheme.bin_map.size() != n_x)
        throw std::invalid_argument("evaluate_scheme: map sizes do not match the block length");
    if (n_x > kMaxSequences || n_x * n_y > kMaxPairTable || n_x * n_z > kMaxPairTable ||
        n_k * n_b * n_z > kMaxIndexTable || n_b * n_y > kMaxIndexTable)
        throw std::invalid_argument("evaluate_scheme: scale cap exceeded");

    // Per-symbol marginals.
    std::vector<double> p_xy(static_cast<std::size_t>(src.nx) * src.ny, 0.0);
    std::vector<double> p_xz(static_cast<std::size_t>(src.nx) * src.nz, 0.0);
    for (int x = 0; x < src.nx; ++x)
        for (int y = 0; y < src.ny; ++y)
            for (int z = 0; z < src.nz; ++z) {
                const double v = src.p(x, y, z);
                p_xy[x * src.ny + y] += v;
                p_xz[x * src.nz + z] += v;
            }

    const std::vector<double> w_xy = sequence_pair_weights(p_xy, src.nx, src.ny, n);
    const std::vector<double> w_xz = sequence_pair_weights(p_xz, src.nx, src.nz, n);

    // MAP decoder per (public bin, y^n); iterating sequences in ascending
    // order with a strict comparison implements the lowest-index tie break.
    std::vector<double> best_w(n_b * n_y, -1.0);
    std::vector<std::uint32_t> best_x(n_b * n_y, 0);
    for (std::size_t x = 0; x < n_x; ++x) {
        const std::size_t row = scheme.bin_map[x] * n_y;
        for (std::size_t y = 0; y < n_y; ++y) {
            const double w = w_xy[x * n_y + y];
            if (w > best_w[row + y]) {
                best_w[row + y] = w;
                best_x[row + y] = static_cast<std::uint32_t>(x);
            }
        }
    }

    LeakageReport rep;
    rep.n = n;
    rep.degraded = src.is_degraded();
    rep.cs = conditional_capacity_discrete(src);

    // Error probabilities and the (phi, y^n) table in one pass.
    std::vector<double> p_by(n_b * n_y, 0.0);
    std::vector<double> p_key(n_k, 0.0);
    for (std::size_t x = 0; x < n_x; ++x) {
        const std::uint32_t bin = scheme.bin_map[x];
        const std::uint32_t key = scheme.key_map[x];
        const std::size_t row = static_cast<std::size_t>(bin) * n_y;
        double px = 0.0;
        for (std::size_t y = 0; y < n_y; ++y) {
            const double w = w_xy[x * n_y + y];
            if (w == 0.0) continue;
            px += w;
            p_by[row + y] += w;
            const std::uint32_t xhat = best_x[row + y];
            if (xhat != x) {
                rep.pe_seq += w;
                if (scheme.key_map[xhat] != key) rep.pe += w;
            }
        }
        p_key[key] += px;
    }

    // Joint (key, phi, z^n) table for the leakage terms.
    std::vector<double> p_kbz(n_k * n_b * n_z, 0.0);
    for (std::size_t x = 0; x < n_x; ++x) {
        const std::size_t row =
            (static_cast<std::size_t>(scheme.key_map[x]) * n_b + scheme.bin_map[x]) * n_z;
        for (std::size_t z = 0; z < n_z; ++z) p_kbz[row + z] += w_xz[x * n_z + z];
    }
    std::vector<double> p_bz(n_b * n_z, 0.0);
    for (std::size_t k = 0; k < n_k; ++k)
        for (std::size_t bz = 0; bz < n_b * n_z; ++bz) p_bz[bz] += p_kbz[k * n_b * n_z + bz];

    const double h_key = table_entropy(p_key);
    const double h_bz = table_entropy(p_bz);
    const double h_kbz = table_entropy(p_kbz);
    const double h_by = table_entropy(p_by);

    const double inv_n = 1.0 / n;
    rep.key_entropy = h_key * inv_n;
    rep.leak = std::max(0.0, h_key + h_bz - h_kbz) * inv_n;
    rep.leak_x = std::max(0.0, n * src.entropy_x() + h_bz - n * src.entropy_xz()) * inv_n;
    rep.residual = std::max(0.0, n * src.entropy_xy() - h_by) * inv_n;
    return rep;
}

std::pair<bool, double> check_leakage_bound(const LeakageReport& report) {
    if (!report.degraded)
        throw std::invalid_argument("check_leakage_bound: source is not degraded");
    const double slack = report.leak - (report.key_entropy - report.residual - report.cs);
    return {slack >= -1e-12, slack};
}

}  // namespace sparsekey
