#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "sparsekey/mutual_info.hpp"

namespace sparsekey {

// A sounding sequence d with ||d||^2 = P. Its Toeplitz expansion over m delay
// bins is the (K+m-1) x m convolution matrix whose column l is d delayed by l.
struct SoundingDesign {
    Eigen::VectorXcd d;

    double power() const { return d.squaredNorm(); }
    int length() const { return static_cast<int>(d.size()); }
    int rows(int bins) const { return length() + bins - 1; }

    Eigen::MatrixXcd convolution_matrix(int bins) const;

    // sqrt(P) * (1, 0, ..., 0): exactly orthogonal columns for any bin count.
    static SoundingDesign impulse(double power, int length);
    // Unit-modulus entries with uniformly random phases; asymptotically white.
    static SoundingDesign pseudo_random(double power, int length, std::uint64_t seed);
    // One complex sample per line: "re" or "re,im" (whitespace also accepted).
    static SoundingDesign from_csv(const std::string& path);
};

// Gaussian mutual information of the full vector observations, from
// log-determinants of the block covariance matrices
//   R_X = D R_h D^H + nvar_a I,  R_Y likewise,  R_Z = D R_he D^H + nvar_e I,
// with cross blocks D R_h D^H (X,Y) and D R_cross D^H (X,Z), where R_cross
// is diagonal with eta*sqrt(var_h[l]*var_he[l]) on common-support bins.
// Exact for any sounding sequence; coincides with vector_mi_closed_form when
// the design has orthogonal columns.
MiPair vector_mi_logdet_oracle(const SoundingDesign& design, const PowerProfile& profile,
                               double nvar_a, double nvar_b, double nvar_e, double eta);

}  // namespace sparsekey
