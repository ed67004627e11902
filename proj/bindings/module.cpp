#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sparsekey/channel_model.hpp"
#include "sparsekey/ergodic.hpp"
#include "sparsekey/gaussian_oracle.hpp"
#include "sparsekey/leakage.hpp"
#include "sparsekey/mutual_info.hpp"
#include "sparsekey/numeric.hpp"
#include "sparsekey/outage.hpp"

namespace py = pybind11;
using namespace sparsekey;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secret-key generation from sparse reciprocal wireless channels: "
              "rates, secrecy outage and exact leakage checks";

    // --- channel model -----------------------------------------------------
    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init([](double bandwidth_hz, double max_delay_s, double delta, double theta,
                         double eta, double snr_a, double snr_b, double snr_e, double power) {
                 return ChannelConfig{bandwidth_hz, max_delay_s, delta, theta, eta,
                                      snr_a,        snr_b,       snr_e, power};
             }),
             py::arg("bandwidth_hz"), py::arg("max_delay_s"), py::arg("delta"), py::arg("theta"),
             py::arg("eta"), py::arg("snr_a") = 1.0, py::arg("snr_b") = 1.0,
             py::arg("snr_e") = 1.0, py::arg("power") = 1.0)
        .def_readwrite("bandwidth_hz", &ChannelConfig::bandwidth_hz)
        .def_readwrite("max_delay_s", &ChannelConfig::max_delay_s)
        .def_readwrite("delta", &ChannelConfig::delta)
        .def_readwrite("theta", &ChannelConfig::theta)
        .def_readwrite("eta", &ChannelConfig::eta)
        .def_readwrite("snr_a", &ChannelConfig::snr_a)
        .def_readwrite("snr_b", &ChannelConfig::snr_b)
        .def_readwrite("snr_e", &ChannelConfig::snr_e)
        .def_readwrite("power", &ChannelConfig::power)
        .def("rho", &ChannelConfig::rho)
        .def("mean_dof", &ChannelConfig::mean_dof)
        .def("bin_count", &ChannelConfig::bin_count)
        .def("eve_q0", &ChannelConfig::eve_q0)
        .def("validate", &ChannelConfig::validate)
        .def("__repr__", [](const ChannelConfig& c) {
            std::ostringstream os;
            os << "ChannelConfig(W=" << c.bandwidth_hz << ", tau_m=" << c.max_delay_s
               << ", delta=" << c.delta << ", theta=" << c.theta << ", eta=" << c.eta << ")";
            return os.str();
        });

    py::class_<DofCounts>(m, "DofCounts")
        .def(py::init<>())
        .def(py::init([](int b_ab, int b_e, int b_q) { return DofCounts{b_ab, b_e, b_q}; }),
             py::arg("b_ab"), py::arg("b_e"), py::arg("b_q"))
        .def_readwrite("b_ab", &DofCounts::b_ab)
        .def_readwrite("b_e", &DofCounts::b_e)
        .def_readwrite("b_q", &DofCounts::b_q)
        .def("__repr__", [](const DofCounts& c) {
            std::ostringstream os;
            os << "DofCounts(b_ab=" << c.b_ab << ", b_e=" << c.b_e << ", b_q=" << c.b_q << ")";
            return os.str();
        });

    m.def("sparsity_probability", &sparsity_probability, py::arg("cfg"));
    m.def("eve_transitions", &eve_transitions, py::arg("cfg"),
          "Returns (theta, q0) with q0 chosen so the eavesdropper marginal matches rho");
    m.def(
        "sample_dof",
        [](const ChannelConfig& cfg, std::uint64_t seed) {
            auto rng = make_rng(seed);
            return sample_dof(cfg, rng);
        },
        py::arg("cfg"), py::arg("seed"));
    m.def(
        "sample_dof_many",
        [](const ChannelConfig& cfg, long count, std::uint64_t seed) {
            auto rng = make_rng(seed);
            std::vector<DofCounts> out;
            out.reserve(count);
            for (long i = 0; i < count; ++i) out.push_back(sample_dof(cfg, rng));
            return out;
        },
        py::arg("cfg"), py::arg("count"), py::arg("seed"));
    m.def(
        "dof_pmf",
        [](const ChannelConfig& cfg, int m_cap) {
            const DofPmf pmf = dof_pmf(cfg, m_cap);
            std::vector<std::tuple<int, int, int, double>> cells;
            cells.reserve(pmf.cells.size());
            for (const auto& c : pmf.cells) cells.emplace_back(c.b_ab, c.b_q, c.e0, c.p);
            return cells;
        },
        py::arg("cfg"), py::arg("m_cap") = 128,
        "Exact joint pmf as a list of (b_ab, b_q, e0, p) cells");
    m.def("state_entropy_bonus", &state_entropy_bonus, py::arg("cfg"), py::arg("n"));

    // --- mutual information ------------------------------------------------
    m.def("i_ab", &i_ab, py::arg("ga"), py::arg("gb"));
    m.def("i_ae", &i_ae, py::arg("ga"), py::arg("ge"), py::arg("eta"));
    m.def("i_ab_lowsnr", &i_ab_lowsnr, py::arg("x"));
    m.def("i_ae_lowsnr", &i_ae_lowsnr, py::arg("x"), py::arg("y"), py::arg("eta"));
    m.def("is_eve_degraded", &is_eve_degraded, py::arg("var_h"), py::arg("var_he"),
          py::arg("power"), py::arg("nvar_b"), py::arg("nvar_e"), py::arg("eta"));

    py::class_<PowerProfile>(m, "PowerProfile")
        .def(py::init<>())
        .def_readwrite("var_h", &PowerProfile::var_h)
        .def_readwrite("var_he", &PowerProfile::var_he)
        .def_readwrite("s_ab", &PowerProfile::s_ab)
        .def_readwrite("s_e", &PowerProfile::s_e)
        .def("validate", &PowerProfile::validate)
        .def_static("uniform", &PowerProfile::uniform, py::arg("s_ab"), py::arg("s_e"));

    py::class_<MiPair>(m, "MiPair")
        .def_readonly("i_xy", &MiPair::i_xy)
        .def_readonly("i_xz", &MiPair::i_xz)
        .def("__repr__", [](const MiPair& p) {
            std::ostringstream os;
            os << "MiPair(i_xy=" << p.i_xy << ", i_xz=" << p.i_xz << ")";
            return os.str();
        });

    m.def("vector_mi_closed_form", &vector_mi_closed_form, py::arg("profile"), py::arg("ga"),
          py::arg("gb"), py::arg("ge"), py::arg("eta"));

    py::class_<SoundingDesign>(m, "SoundingDesign")
        .def_readwrite("d", &SoundingDesign::d)
        .def("power", &SoundingDesign::power)
        .def("length", &SoundingDesign::length)
        .def_static("impulse", &SoundingDesign::impulse, py::arg("power"), py::arg("length"))
        .def_static("pseudo_random", &SoundingDesign::pseudo_random, py::arg("power"),
                    py::arg("length"), py::arg("seed"))
        .def_static("from_csv", &SoundingDesign::from_csv, py::arg("path"));

    m.def("vector_mi_logdet_oracle", &vector_mi_logdet_oracle, py::arg("design"),
          py::arg("profile"), py::arg("nvar_a"), py::arg("nvar_b"), py::arg("nvar_e"),
          py::arg("eta"),
          "Log-determinant Gaussian mutual information of the full vector observations");

    // --- ergodic rates -----------------------------------------------------
    py::enum_<RateMethod>(m, "RateMethod")
        .value("exact", RateMethod::exact)
        .value("mc", RateMethod::mc)
        .value("approx", RateMethod::approx);

    py::class_<RatePoint>(m, "RatePoint")
        .def_readonly("snr", &RatePoint::snr)
        .def_readonly("bandwidth_hz", &RatePoint::bandwidth_hz)
        .def_readonly("rate_bits", &RatePoint::rate_bits)
        .def_readonly("method", &RatePoint::method)
        .def_readonly("mc_stderr", &RatePoint::mc_stderr)
        .def("__repr__", [](const RatePoint& p) {
            std::ostringstream os;
            os << "RatePoint(snr=" << p.snr << ", rate_bits=" << p.rate_bits << ")";
            return os.str();
        });

    m.def("inst_rate", &inst_rate, py::arg("counts"), py::arg("snr"), py::arg("eta"));
    m.def("ergodic_rate", &ergodic_rate, py::arg("cfg"), py::arg("snr"),
          py::arg("method") = RateMethod::exact, py::arg("samples") = 100000,
          py::arg("seed") = 0);
    m.def("wideband_approx", &wideband_approx, py::arg("cfg"), py::arg("snr"));

    py::class_<OnOffResult>(m, "OnOffResult")
        .def_readonly("lambda_star", &OnOffResult::lambda_star)
        .def_readonly("rate_bits", &OnOffResult::rate_bits)
        .def_readonly("grid_points", &OnOffResult::grid_points);

    m.def(
        "onoff_optimize",
        [](const ChannelConfig& cfg, double snr, RateMethod method, long samples,
           std::uint64_t seed) { return onoff_optimize(cfg, snr, method, samples, seed); },
        py::arg("cfg"), py::arg("snr"), py::arg("method") = RateMethod::exact,
        py::arg("samples") = 100000, py::arg("seed") = 0,
        "Best on-off time-sharing fraction and the resulting envelope rate");

    // --- outage ------------------------------------------------------------
    m.def("conditional_capacity", &conditional_capacity, py::arg("counts"), py::arg("snr"),
          py::arg("eta"));
    m.def("backoff_threshold", &backoff_threshold, py::arg("alpha"), py::arg("ratio_a"),
          py::arg("theta"));

    py::class_<BackoffSpec>(m, "BackoffSpec")
        .def_readonly("alpha", &BackoffSpec::alpha)
        .def_readonly("A", &BackoffSpec::A)
        .def_readonly("theta", &BackoffSpec::theta)
        .def_readonly("a", &BackoffSpec::a);

    m.def("make_backoff", &make_backoff, py::arg("alpha"), py::arg("theta"), py::arg("eta"));
    m.def("make_backoff_ratio", &make_backoff_ratio, py::arg("alpha"), py::arg("theta"),
          py::arg("ratio_a"));
    m.def("kl_bernoulli", &kl_bernoulli, py::arg("a"), py::arg("p"));
    m.def("outage_exact", &outage_exact, py::arg("l"), py::arg("theta"), py::arg("a"));
    m.def("outage_bound", &outage_bound, py::arg("l"), py::arg("theta"), py::arg("a"));
    m.def("outage_exponent", &outage_exponent, py::arg("dof"), py::arg("theta"), py::arg("a"));
    m.def("gaussian_tail", &gaussian_tail, py::arg("l"), py::arg("theta"), py::arg("a"));

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("p", &McEstimate::p)
        .def_readonly("std_err", &McEstimate::std_err);

    m.def("outage_mc", &outage_mc, py::arg("cfg"), py::arg("snr"), py::arg("rate_bits"),
          py::arg("lam"), py::arg("samples"), py::arg("seed"));
    m.def("outage_mc_conditioned", &outage_mc_conditioned, py::arg("l"), py::arg("theta"),
          py::arg("snr"), py::arg("rate_bits"), py::arg("lam"), py::arg("eta"),
          py::arg("samples"), py::arg("seed"));

    py::class_<OutageReport>(m, "OutageReport")
        .def_readonly("L", &OutageReport::L)
        .def_readonly("theta", &OutageReport::theta)
        .def_readonly("a", &OutageReport::a)
        .def_readonly("p_exact", &OutageReport::p_exact)
        .def_readonly("p_bound", &OutageReport::p_bound)
        .def_readonly("p_gauss", &OutageReport::p_gauss)
        .def_readonly("exponent", &OutageReport::exponent)
        .def_readonly("outage_impossible", &OutageReport::outage_impossible);

    m.def("make_outage_report", &make_outage_report, py::arg("dof"), py::arg("theta"),
          py::arg("a"));

    py::class_<ExponentPoint>(m, "ExponentPoint")
        .def_readonly("bandwidth_hz", &ExponentPoint::bandwidth_hz)
        .def_readonly("dof", &ExponentPoint::dof)
        .def_readonly("exponent", &ExponentPoint::exponent);

    m.def("exponent_curve", &exponent_curve, py::arg("cfg"), py::arg("alpha"), py::arg("w_grid"),
          py::arg("ratio_a") = 0.0);

    // --- discrete leakage model ----------------------------------------------
    py::class_<ToySource>(m, "ToySource")
        .def(py::init<>())
        .def_readwrite("nx", &ToySource::nx)
        .def_readwrite("ny", &ToySource::ny)
        .def_readwrite("nz", &ToySource::nz)
        .def_readwrite("joint", &ToySource::joint)
        .def("p", &ToySource::p, py::arg("x"), py::arg("y"), py::arg("z"))
        .def("validate", &ToySource::validate)
        .def("is_degraded", &ToySource::is_degraded, py::arg("tol") = 1e-10)
        .def("cond_entropy_x_given_y", &ToySource::cond_entropy_x_given_y)
        .def_static("bsc_cascade", &ToySource::bsc_cascade, py::arg("p1"), py::arg("p2"))
        .def_static("noiseless_pair_blind_eve", &ToySource::noiseless_pair_blind_eve)
        .def_static("fully_exposed", &ToySource::fully_exposed)
        .def_static("from_csv", &ToySource::from_csv, py::arg("path"));

    m.def("conditional_capacity_discrete", &conditional_capacity_discrete, py::arg("src"));

    py::class_<BinningScheme>(m, "BinningScheme")
        .def(py::init<>())
        .def_readwrite("n", &BinningScheme::n)
        .def_readwrite("alphabet", &BinningScheme::alphabet)
        .def_readwrite("key_rate", &BinningScheme::key_rate)
        .def_readwrite("public_rate", &BinningScheme::public_rate)
        .def_readwrite("num_keys", &BinningScheme::num_keys)
        .def_readwrite("num_bins", &BinningScheme::num_bins)
        .def_readwrite("key_map", &BinningScheme::key_map)
        .def_readwrite("bin_map", &BinningScheme::bin_map);

    m.def("random_binning", &random_binning, py::arg("n"), py::arg("key_rate"),
          py::arg("public_rate"), py::arg("alphabet"), py::arg("seed"));

    py::class_<LeakageReport>(m, "LeakageReport")
        .def_readonly("n", &LeakageReport::n)
        .def_readonly("pe", &LeakageReport::pe)
        .def_readonly("pe_seq", &LeakageReport::pe_seq)
        .def_readonly("key_entropy", &LeakageReport::key_entropy)
        .def_readonly("leak", &LeakageReport::leak)
        .def_readonly("leak_x", &LeakageReport::leak_x)
        .def_readonly("residual", &LeakageReport::residual)
        .def_readonly("cs", &LeakageReport::cs)
        .def_readonly("degraded", &LeakageReport::degraded);

    m.def("evaluate_scheme", &evaluate_scheme, py::arg("scheme"), py::arg("src"),
          "Exact error probability, entropies and leakage of a binning scheme");
    m.def("check_leakage_bound", &check_leakage_bound, py::arg("report"),
          "Returns (holds, slack) for leak >= H(K)/n - residual - cs");
}
