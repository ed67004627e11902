#include "sparsekey/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sparsekey/ergodic.hpp"
#include "sparsekey/gaussian_oracle.hpp"
#include "sparsekey/leakage.hpp"
#include "sparsekey/mutual_info.hpp"
#include "sparsekey/numeric.hpp"
#include "sparsekey/outage.hpp"

namespace sparsekey {

namespace {

// Shortest representation that parses back to the identical double; keeps
// output files byte-stable and the echoed config exactly round-trippable.
std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        return std::stol(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer value for " + key + ": '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad boolean value for " + key + ": '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(to_double(key, item));
    }
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "command",      "bandwidth_hz", "max_delay_s", "delta",       "theta",
        "eta",          "snr",          "snr_a",       "snr_b",       "snr_e",
        "power",        "grid_min",     "grid_max",    "grid_points", "grid_log",
        "deltas",       "alpha",        "lambda",      "samples",     "seed",
        "method",       "use_onoff",    "mi_ratio",    "block_len",   "trials",
        "key_rate",     "public_rate",  "bsc_p1",      "bsc_p2",      "source_csv",
        "bins",         "sounding_len", "sounding",    "sounding_csv", "out",
        "format",
    };
    return keys;
}

const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds = {
        "ergodic-snr", "ergodic-bandwidth", "outage-exponent", "outage-mc",
        "leakage",     "mi-oracle",         "degraded-check",
    };
    return cmds;
}

std::uint64_t command_stream_id(const std::string& command) {
    std::uint64_t id = 0;
    for (char c : command) id = id * 131 + static_cast<unsigned char>(c);
    return id;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const SweepConfig& cfg, const Table& table) {
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot open output file " + cfg.out);
    if (cfg.format == "json") {
        nlohmann::json j;
        for (const auto& [k, v] : cfg.to_kv()) j["config"][k] = v;
        j["columns"] = table.columns;
        auto& rows = j["rows"] = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json r = nlohmann::json::array();
            for (double v : row) {
                if (std::isfinite(v))
                    r.push_back(v);
                else
                    r.push_back(fmt_double(v));
            }
            rows.push_back(std::move(r));
        }
        out << j.dump(2) << "\n";
    } else {
        out << "# sparsekey output\n";
        for (const auto& [k, v] : cfg.to_kv()) out << "# " << k << "=" << v << "\n";
        out << "# columns: " << join(table.columns, ",") << "\n";
        for (const auto& row : table.rows) {
            std::vector<std::string> cells;
            cells.reserve(row.size());
            for (double v : row) cells.push_back(fmt_double(v));
            out << join(cells, ",") << "\n";
        }
    }
    if (!out) throw std::runtime_error("failed writing output file " + cfg.out);
}

RateMethod resolve_method(const std::string& method, const ChannelConfig& cfg) {
    if (method == "exact") return RateMethod::exact;
    if (method == "mc") return RateMethod::mc;
    if (method == "approx") return RateMethod::approx;
    return cfg.bin_count() <= 128 ? RateMethod::exact : RateMethod::mc;
}

std::vector<double> delta_list(const SweepConfig& cfg) {
    return cfg.deltas.empty() ? std::vector<double>{cfg.channel.delta} : cfg.deltas;
}

Table run_ergodic(const SweepConfig& cfg, SweepAxis axis) {
    const std::vector<double> grid = cfg.grid.values();
    const std::vector<double> deltas = delta_list(cfg);
    const std::uint64_t cmd = command_stream_id(cfg.command);

    Table t;
    t.columns.push_back(axis == SweepAxis::snr ? "snr" : "bandwidth_hz");
    for (double d : deltas) {
        t.columns.push_back("rate_d" + fmt_double(d));
        if (cfg.use_onoff)
            t.columns.push_back("lambda_d" + fmt_double(d));
        else
            t.columns.push_back("stderr_d" + fmt_double(d));
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            ChannelConfig ch = cfg.channel;
            ch.delta = deltas[j];
            double snr = ch.snr_a;
            if (axis == SweepAxis::snr)
                snr = grid[i];
            else
                ch.bandwidth_hz = grid[i];
            ch.validate();
            const RateMethod m = resolve_method(cfg.method, ch);
            const std::uint64_t sub = substream_seed(cfg.seed, cmd, i * deltas.size() + j);
            if (cfg.use_onoff) {
                const OnOffResult oo = onoff_optimize(ch, snr, m, cfg.samples, sub);
                row.push_back(oo.rate_bits);
                row.push_back(oo.lambda_star);
            } else {
                const RatePoint pt = ergodic_rate(ch, snr, m, cfg.samples, sub);
                row.push_back(pt.rate_bits);
                row.push_back(pt.mc_stderr);
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_outage_exponent(const SweepConfig& cfg, std::ostream& err) {
    const std::vector<double> grid = cfg.grid.values();
    const std::vector<double> deltas = delta_list(cfg);
    const BackoffSpec spec = cfg.mi_ratio > 0.0
                                 ? make_backoff_ratio(cfg.alpha, cfg.channel.theta, cfg.mi_ratio)
                                 : make_backoff(cfg.alpha, cfg.channel.theta, cfg.channel.eta);
    if (spec.a >= 1.0)
        err << "warning: backoff threshold a = " << fmt_double(spec.a)
            << " >= 1; outage impossible, exponent columns are inf\n";

    Table t;
    t.columns.push_back("bandwidth_hz");
    for (double d : deltas) {
        t.columns.push_back("dof_d" + fmt_double(d));
        t.columns.push_back("exponent_d" + fmt_double(d));
    }
    for (double w : grid) {
        std::vector<double> row{w};
        for (double d : deltas) {
            ChannelConfig ch = cfg.channel;
            ch.delta = d;
            ch.bandwidth_hz = w;
            ch.validate_ranges();
            const double dof = ch.mean_dof();
            row.push_back(dof);
            row.push_back(outage_exponent(dof, spec.theta, spec.a));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table run_outage_mc(const SweepConfig& cfg, std::ostream& err) {
    const std::vector<double> alphas = cfg.grid.values();
    const std::uint64_t cmd = command_stream_id(cfg.command);
    const ChannelConfig& ch = cfg.channel;
    const double snr = ch.snr_a;
    const RateMethod m = resolve_method(cfg.method, ch);

    // Reference rate the backoff is taken from: plain ergodic rate, or the
    // on-off envelope, in which case the optimizer's lambda* enters the
    // outage criterion as well.
    double lambda = cfg.lambda;
    double rate_ref = 0.0;
    const std::uint64_t ref_sub = substream_seed(cfg.seed, cmd, 0xfefe);
    if (cfg.use_onoff) {
        const OnOffResult oo = onoff_optimize(ch, snr, m, cfg.samples, ref_sub);
        rate_ref = oo.rate_bits;
        lambda = oo.lambda_star;
    } else {
        rate_ref = ergodic_rate(ch, snr, m, cfg.samples, ref_sub).rate_bits;
    }

    Table t;
    t.columns = {"alpha", "L",       "theta", "a",        "p_exact",
                 "p_bound", "p_gauss", "exponent", "p_mc",  "p_mc_stderr"};
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double alpha = alphas[i];
        const BackoffSpec spec = cfg.mi_ratio > 0.0
                                     ? make_backoff_ratio(alpha, ch.theta, cfg.mi_ratio)
                                     : make_backoff(alpha, ch.theta, ch.eta);
        OutageReport rep = make_outage_report(ch.mean_dof(), spec.theta, spec.a);
        if (rep.outage_impossible)
            err << "warning: alpha = " << fmt_double(alpha)
                << " gives threshold a >= 1; outage impossible\n";
        const McEstimate mc = outage_mc(ch, snr, alpha * rate_ref, lambda, cfg.samples,
                                        substream_seed(cfg.seed, cmd, i));
        t.rows.push_back({alpha, static_cast<double>(rep.L), rep.theta, rep.a, rep.p_exact,
                          rep.p_bound, rep.p_gauss, rep.exponent, mc.p, mc.std_err});
    }
    return t;
}

Table run_leakage(const SweepConfig& cfg) {
    const ToySource src = cfg.source_csv.empty() ? ToySource::bsc_cascade(cfg.bsc_p1, cfg.bsc_p2)
                                                 : ToySource::from_csv(cfg.source_csv);
    src.validate();
    if (!src.is_degraded())
        throw std::invalid_argument("leakage: source is not degraded; the bound does not apply");
    const double cs = conditional_capacity_discrete(src);
    const double key_rate = cfg.key_rate >= 0.0 ? cfg.key_rate : cs + 0.25;
    const double public_rate =
        cfg.public_rate >= 0.0 ? cfg.public_rate : src.cond_entropy_x_given_y() + 0.25;
    const std::uint64_t cmd = command_stream_id(cfg.command);

    Table t;
    t.columns = {"trial",    "n",    "pe",       "pe_seq", "key_entropy",
                 "leak",     "leak_x", "residual", "cs",     "slack",
                 "bound_holds"};
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const BinningScheme scheme = random_binning(cfg.block_len, key_rate, public_rate, src.nx,
                                                    substream_seed(cfg.seed, cmd, trial));
        const LeakageReport rep = evaluate_scheme(scheme, src);
        const auto [holds, slack] = check_leakage_bound(rep);
        t.rows.push_back({static_cast<double>(trial), static_cast<double>(rep.n), rep.pe,
                          rep.pe_seq, rep.key_entropy, rep.leak, rep.leak_x, rep.residual, rep.cs,
                          slack, holds ? 1.0 : 0.0});
    }
    return t;
}

Table run_mi_oracle(const SweepConfig& cfg) {
    const std::uint64_t cmd = command_stream_id(cfg.command);
    SoundingDesign design;
    if (!cfg.sounding_csv.empty())
        design = SoundingDesign::from_csv(cfg.sounding_csv);
    else if (cfg.sounding == "pn")
        design = SoundingDesign::pseudo_random(cfg.channel.power, cfg.sounding_len,
                                               substream_seed(cfg.seed, cmd, 0xd0));
    else
        design = SoundingDesign::impulse(cfg.channel.power, cfg.sounding_len);
    const double p = design.power();

    Table t;
    t.columns = {"trial",       "i_xy_closed", "i_xy_oracle", "i_xz_closed",
                 "i_xz_oracle", "err_xy",      "err_xz"};
    for (int trial = 0; trial < cfg.trials; ++trial) {
        auto rng = make_rng(substream_seed(cfg.seed, cmd, trial + 1));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<std::uint8_t> s_ab(cfg.bins), s_e(cfg.bins);
        for (int l = 0; l < cfg.bins; ++l) {
            s_ab[l] = unif(rng) < 0.6 ? 1 : 0;
            s_e[l] = unif(rng) < 0.6 ? 1 : 0;
        }
        PowerProfile profile;
        profile.s_ab = s_ab;
        profile.s_e = s_e;
        profile.var_h.assign(cfg.bins, 0.0);
        profile.var_he.assign(cfg.bins, 0.0);
        double sum_h = 0.0, sum_he = 0.0;
        for (int l = 0; l < cfg.bins; ++l) {
            if (s_ab[l]) sum_h += profile.var_h[l] = 0.2 + unif(rng);
            if (s_e[l]) sum_he += profile.var_he[l] = 0.2 + unif(rng);
        }
        for (int l = 0; l < cfg.bins; ++l) {
            if (sum_h > 0.0) profile.var_h[l] /= sum_h;
            if (sum_he > 0.0) profile.var_he[l] /= sum_he;
        }
        const double na = 0.5 + 1.5 * unif(rng);
        const double nb = 0.5 + 1.5 * unif(rng);
        const double ne = 0.5 + 1.5 * unif(rng);
        const double eta = unif(rng);

        const MiPair closed = vector_mi_closed_form(profile, p / na, p / nb, p / ne, eta);
        const MiPair oracle = vector_mi_logdet_oracle(design, profile, na, nb, ne, eta);
        t.rows.push_back({static_cast<double>(trial), closed.i_xy, oracle.i_xy, closed.i_xz,
                          oracle.i_xz, std::abs(closed.i_xy - oracle.i_xy),
                          std::abs(closed.i_xz - oracle.i_xz)});
    }
    return t;
}

Table run_degraded_check(const SweepConfig& cfg) {
    const ChannelConfig& ch = cfg.channel;
    const double nvar_b = ch.power / ch.snr_b;
    const double nvar_e = ch.power / ch.snr_e;

    Table t;
    t.columns = {"power", "bob_snr", "eve_snr", "degraded"};
    for (double p : cfg.grid.values()) {
        const double bob = p / nvar_b;
        const double eve =
            ch.eta * ch.eta * p / ((1.0 - ch.eta * ch.eta) * p + nvar_e);
        t.rows.push_back(
            {p, bob, eve, is_eve_degraded(1.0, 1.0, p, nvar_b, nvar_e, ch.eta) ? 1.0 : 0.0});
    }
    return t;
}

}  // namespace

void GridSpec::validate() const {
    if (points < 2) throw std::invalid_argument("grid: points must be >= 2");
    if (!(min < max)) throw std::invalid_argument("grid: min must be < max");
    if (log_scale && !(min > 0.0))
        throw std::invalid_argument("grid: log scale requires min > 0");
}

std::vector<double> GridSpec::values() const {
    validate();
    std::vector<double> out(points);
    if (log_scale) {
        const double step = std::log(max / min) / (points - 1);
        for (int i = 0; i < points; ++i) out[i] = min * std::exp(step * i);
    } else {
        const double step = (max - min) / (points - 1);
        for (int i = 0; i < points; ++i) out[i] = min + step * i;
    }
    out.front() = min;
    out.back() = max;
    return out;
}

void SweepConfig::validate() const {
    // Only the pattern-sampling commands need the full joint model; the
    // closed-form tail and per-bin commands accept any in-range parameters.
    const bool samples_patterns =
        command == "ergodic-snr" || command == "ergodic-bandwidth" || command == "outage-mc";
    if (samples_patterns)
        channel.validate();
    else
        channel.validate_ranges();
    if (!known_commands().count(command))
        throw std::invalid_argument("config: unknown command '" + command + "'");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    if (out.empty()) throw std::invalid_argument("config: output path (out=) is required");
    if (method != "auto" && method != "exact" && method != "mc" && method != "approx")
        throw std::invalid_argument("config: method must be auto, exact, mc or approx");
    if (use_onoff && method == "approx")
        throw std::invalid_argument(
            "config: use_onoff with the wideband approximation diverges (quadratic rate)");
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (!(lambda > 0.0) || lambda > 1.0)
        throw std::invalid_argument("config: lambda must lie in (0, 1]");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("config: alpha must lie in (0, 1]");
    for (double d : deltas)
        if (!(d > 0.0) || d > 1.0)
            throw std::invalid_argument("config: every delta must lie in (0, 1]");
    if (block_len < 1 || block_len > 10)
        throw std::invalid_argument("config: block_len must lie in [1, 10]");
    if (bins < 1 || bins > 8) throw std::invalid_argument("config: bins must lie in [1, 8]");
    if (sounding != "impulse" && sounding != "pn")
        throw std::invalid_argument("config: sounding must be impulse or pn");
    if (sounding_len < 1) throw std::invalid_argument("config: sounding_len must be >= 1");

    const bool needs_grid = command != "leakage" && command != "mi-oracle";
    if (needs_grid) grid.validate();
    if (command == "outage-mc" && (!(grid.min > 0.0) || grid.max > 1.0))
        throw std::invalid_argument("config: outage-mc sweeps alpha, grid must lie in (0, 1]");

    const bool stochastic = command == "ergodic-snr" || command == "ergodic-bandwidth" ||
                            command == "outage-mc" || command == "leakage" ||
                            command == "mi-oracle";
    if (stochastic && !has_seed)
        throw std::invalid_argument("config: seed= is required for command '" + command + "'");

    const bool equal_snr_model = command == "ergodic-snr" || command == "ergodic-bandwidth" ||
                                 command == "outage-mc";
    if (equal_snr_model && (channel.snr_a != channel.snr_b || channel.snr_a != channel.snr_e))
        throw std::invalid_argument(
            "config: command '" + command +
            "' uses the equal-SNR model; set snr= (or equal snr_a/snr_b/snr_e)");
}

std::vector<std::pair<std::string, std::string>> SweepConfig::to_kv() const {
    std::vector<std::pair<std::string, std::string>> kv;
    auto add = [&kv](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
    add("command", command);
    add("bandwidth_hz", fmt_double(channel.bandwidth_hz));
    add("max_delay_s", fmt_double(channel.max_delay_s));
    add("delta", fmt_double(channel.delta));
    add("theta", fmt_double(channel.theta));
    add("eta", fmt_double(channel.eta));
    add("snr_a", fmt_double(channel.snr_a));
    add("snr_b", fmt_double(channel.snr_b));
    add("snr_e", fmt_double(channel.snr_e));
    add("power", fmt_double(channel.power));
    add("grid_min", fmt_double(grid.min));
    add("grid_max", fmt_double(grid.max));
    add("grid_points", std::to_string(grid.points));
    add("grid_log", fmt_bool(grid.log_scale));
    {
        std::vector<std::string> parts;
        for (double d : deltas) parts.push_back(fmt_double(d));
        add("deltas", join(parts, ","));
    }
    add("alpha", fmt_double(alpha));
    add("lambda", fmt_double(lambda));
    add("samples", std::to_string(samples));
    if (has_seed) add("seed", std::to_string(seed));
    add("method", method);
    add("use_onoff", fmt_bool(use_onoff));
    add("mi_ratio", fmt_double(mi_ratio));
    add("block_len", std::to_string(block_len));
    add("trials", std::to_string(trials));
    add("key_rate", fmt_double(key_rate));
    add("public_rate", fmt_double(public_rate));
    add("bsc_p1", fmt_double(bsc_p1));
    add("bsc_p2", fmt_double(bsc_p2));
    add("source_csv", source_csv);
    add("bins", std::to_string(bins));
    add("sounding_len", std::to_string(sounding_len));
    add("sounding", sounding);
    add("sounding_csv", sounding_csv);
    add("out", out);
    add("format", format);
    return kv;
}

SweepConfig SweepConfig::from_kv(const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv)
        if (!known_keys().count(k))
            throw std::invalid_argument("config: unknown key '" + k + "'");

    SweepConfig cfg;
    cfg.channel = ChannelConfig::from_kv(kv);
    auto get = [&kv](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("command")) cfg.command = *v;
    if (auto* v = get("grid_min")) cfg.grid.min = to_double("grid_min", *v);
    if (auto* v = get("grid_max")) cfg.grid.max = to_double("grid_max", *v);
    if (auto* v = get("grid_points")) cfg.grid.points = static_cast<int>(to_long("grid_points", *v));
    if (auto* v = get("grid_log")) cfg.grid.log_scale = to_bool("grid_log", *v);
    if (auto* v = get("deltas")) cfg.deltas = to_list("deltas", *v);
    if (auto* v = get("alpha")) cfg.alpha = to_double("alpha", *v);
    if (auto* v = get("lambda")) cfg.lambda = to_double("lambda", *v);
    if (auto* v = get("samples")) cfg.samples = to_long("samples", *v);
    if (auto* v = get("seed")) {
        try {
            cfg.seed = std::stoull(*v);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad seed value '" + *v + "'");
        }
        cfg.has_seed = true;
    }
    if (auto* v = get("method")) cfg.method = *v;
    if (auto* v = get("use_onoff")) cfg.use_onoff = to_bool("use_onoff", *v);
    if (auto* v = get("mi_ratio")) cfg.mi_ratio = to_double("mi_ratio", *v);
    if (auto* v = get("block_len")) cfg.block_len = static_cast<int>(to_long("block_len", *v));
    if (auto* v = get("trials")) cfg.trials = static_cast<int>(to_long("trials", *v));
    if (auto* v = get("key_rate")) cfg.key_rate = to_double("key_rate", *v);
    if (auto* v = get("public_rate")) cfg.public_rate = to_double("public_rate", *v);
    if (auto* v = get("bsc_p1")) cfg.bsc_p1 = to_double("bsc_p1", *v);
    if (auto* v = get("bsc_p2")) cfg.bsc_p2 = to_double("bsc_p2", *v);
    if (auto* v = get("source_csv")) cfg.source_csv = *v;
    if (auto* v = get("bins")) cfg.bins = static_cast<int>(to_long("bins", *v));
    if (auto* v = get("sounding_len")) cfg.sounding_len = static_cast<int>(to_long("sounding_len", *v));
    if (auto* v = get("sounding")) cfg.sounding = *v;
    if (auto* v = get("sounding_csv")) cfg.sounding_csv = *v;
    if (auto* v = get("out")) cfg.out = *v;
    if (auto* v = get("format")) cfg.format = *v;
    return cfg;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=', first);
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line without '=': " + line);
        std::string key = line.substr(first, eq - first);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        kv[key] = value;
    }
    return kv;
}

SweepConfig SweepConfig::from_file(const std::string& path) {
    return from_kv(parse_kv_file(path));
}

SweepConfig parse_output_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open output file " + path);
    char first = 0;
    in >> first;
    in.seekg(0);
    std::map<std::string, std::string> kv;
    if (first == '{') {
        nlohmann::json j;
        in >> j;
        for (const auto& [k, v] : j.at("config").items()) kv[k] = v.get<std::string>();
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] != '#') break;
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            const auto b = key.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            key = key.substr(b);
            kv[key] = line.substr(eq + 1);
        }
    }
    return SweepConfig::from_kv(kv);
}

int run_sweep(const SweepConfig& cfg, std::ostream& err) {
    try {
        cfg.validate();
        Table table;
        if (cfg.command == "ergodic-snr")
            table = run_ergodic(cfg, SweepAxis::snr);
        else if (cfg.command == "ergodic-bandwidth")
            table = run_ergodic(cfg, SweepAxis::bandwidth);
        else if (cfg.command == "outage-exponent")
            table = run_outage_exponent(cfg, err);
        else if (cfg.command == "outage-mc")
            table = run_outage_mc(cfg, err);
        else if (cfg.command == "leakage")
            table = run_leakage(cfg);
        else if (cfg.command == "mi-oracle")
            table = run_mi_oracle(cfg);
        else if (cfg.command == "degraded-check")
            table = run_degraded_check(cfg);
        write_table(cfg, table);
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace sparsekey
