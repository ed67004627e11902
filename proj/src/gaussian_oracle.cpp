#include "sparsekey/gaussian_oracle.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "sparsekey/numeric.hpp"

namespace sparsekey {

namespace {

// log2 det of a Hermitian positive-definite matrix via Cholesky.
double log2_det_hpd(const Eigen::MatrixXcd& m) {
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("vector_mi_logdet_oracle: covariance not positive definite");
    double acc = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log2(l(i, i).real());
    return 2.0 * acc;
}

Eigen::MatrixXcd joint_block(const Eigen::MatrixXcd& top_left, const Eigen::MatrixXcd& cross,
                             const Eigen::MatrixXcd& bottom_right) {
    const Eigen::Index n = top_left.rows();
    Eigen::MatrixXcd joint(2 * n, 2 * n);
    joint.topLeftCorner(n, n) = top_left;
    joint.topRightCorner(n, n) = cross;
    joint.bottomLeftCorner(n, n) = cross.adjoint();
    joint.bottomRightCorner(n, n) = bottom_right;
    return joint;
}

}  // namespace

Eigen::MatrixXcd SoundingDesign::convolution_matrix(int bins) const {
    const int k = length();
    if (k < 1 || bins < 1) throw std::invalid_argument("SoundingDesign: empty design or bins");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k + bins - 1, bins);
    for (int c = 0; c < bins; ++c)
        for (int r = 0; r < k; ++r) m(c + r, c) = d(r);
    return m;
}

SoundingDesign SoundingDesign::impulse(double power, int length) {
    if (!(power > 0.0) || length < 1)
        throw std::invalid_argument("SoundingDesign::impulse: need power > 0, length >= 1");
    SoundingDesign s;
    s.d = Eigen::VectorXcd::Zero(length);
    s.d(0) = std::sqrt(power);
    return s;
}

SoundingDesign SoundingDesign::pseudo_random(double power, int length, std::uint64_t seed) {
    if (!(power > 0.0) || length < 1)
        throw std::invalid_argument("SoundingDesign::pseudo_random: need power > 0, length >= 1");
    SoundingDesign s;
    s.d.resize(length);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double amp = std::sqrt(power / length);
    for (int i = 0; i < length; ++i) {
        const double phase = 2.0 * M_PI * unif(rng);
        s.d(i) = std::polar(amp, phase);
    }
    return s;
}

SoundingDesign SoundingDesign::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("SoundingDesign::from_csv: cannot open " + path);
    std::vector<std::complex<double>> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re)) continue;
        row >> im;
        vals.emplace_back(re, im);
    }
    if (vals.empty()) throw std::runtime_error("SoundingDesign::from_csv: no samples in " + path);
    SoundingDesign s;
    s.d = Eigen::Map<Eigen::VectorXcd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return s;
}

MiPair vector_mi_logdet_oracle(const SoundingDesign& design, const PowerProfile& profile,
                               double nvar_a, double nvar_b, double nvar_e, double eta) {
    profile.validate();
    if (!(nvar_a > 0.0) || !(nvar_b > 0.0) || !(nvar_e > 0.0))
        throw std::invalid_argument("vector_mi_logdet_oracle: noise variances must be > 0");
    if (eta < 0.0 || eta > 1.0)
        throw std::invalid_argument("vector_mi_logdet_oracle: eta must lie in [0, 1]");

    const int m = static_cast<int>(profile.bins());
    const Eigen::MatrixXcd conv = design.convolution_matrix(m);
    const int n = static_cast<int>(conv.rows());

    Eigen::VectorXd r_h(m), r_he(m), r_cross(m);
    for (int l = 0; l < m; ++l) {
        r_h(l) = profile.var_h[l];
        r_he(l) = profile.var_he[l];
        const bool common = profile.s_ab[l] && profile.s_e[l];
        r_cross(l) = common ? eta * std::sqrt(profile.var_h[l] * profile.var_he[l]) : 0.0;
    }

    const Eigen::MatrixXcd drd_h = conv * r_h.asDiagonal() * conv.adjoint();
    const Eigen::MatrixXcd drd_he = conv * r_he.asDiagonal() * conv.adjoint();
    const Eigen::MatrixXcd drd_cross = conv * r_cross.asDiagonal() * conv.adjoint();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

    const Eigen::MatrixXcd r_x = drd_h + nvar_a * eye;
    const Eigen::MatrixXcd r_y = drd_h + nvar_b * eye;
    const Eigen::MatrixXcd r_z = drd_he + nvar_e * eye;

    MiPair mi;
    const double ld_x = log2_det_hpd(r_x);
    mi.i_xy = ld_x + log2_det_hpd(r_y) - log2_det_hpd(joint_block(r_x, drd_h, r_y));
    mi.i_xz = ld_x + log2_det_hpd(r_z) - log2_det_hpd(joint_block(r_x, drd_cross, r_z));
    return mi;
}

}  // namespace sparsekey
