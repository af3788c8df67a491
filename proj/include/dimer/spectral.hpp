#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dimer/common.hpp"

namespace dimer {

enum class Side { Left = 1, Right = 2 };  // n <= 0 / n > 0
enum class Branch { Plus, Minus };

using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

struct RootPair {
    cplx r_plus, r_minus;  // |r_plus| >= |r_minus|
    cplx u_plus, u_minus;  // r - 1, computed without cancellation near r = 1
    bool degenerate = false;
};

struct EigVec {
    Vec2 v;
    bool degenerate = false;
};

struct SpectralData {
    cplx omega;
    cplx z1, z2;
    cplx r1_plus, r1_minus, r2_plus, r2_minus;
    Vec2 v1_plus, v1_minus, v2_plus, v2_minus;
};

std::pair<cplx, cplx> z_funcs(const Phase& w, const WeightParams& p);
inline std::pair<cplx, cplx> z_funcs(cplx omega, const WeightParams& p) {
    return z_funcs(Phase::from_omega(omega), p);
}

cplx z_side(int i, const Phase& w, const WeightParams& p);

Mat2 transfer_matrix(Side side, const Phase& w, const WeightParams& p);
inline Mat2 transfer_matrix(Side side, cplx omega, const WeightParams& p) {
    return transfer_matrix(side, Phase::from_omega(omega), p);
}

// roots of r^2 - (2 - z^2/omega) r + 1
RootPair root_pair(int i, const Phase& w, const WeightParams& p);
std::pair<cplx, cplx> roots(int i, cplx omega, const WeightParams& p);

// (omega^{-1} z_i, r - 1)
EigVec eigvec(int i, Branch br, const Phase& w, const WeightParams& p);
inline EigVec eigvec(int i, Branch br, cplx omega, const WeightParams& p) {
    return eigvec(i, br, Phase::from_omega(omega), p);
}

SpectralData spectral_data(const Phase& w, const WeightParams& p);

cplx spectral_curve(cplx z, cplx omega, const WeightParams& p);

bool is_critical(const WeightParams& p);

// grid search for zeros of the spectral curve on |z| = |omega| = 1
struct TorusSearch {
    bool has_root = false;
    double min_log_modulus = 0.0;  // over omega samples, min |log|z|| of the z-roots
};
TorusSearch torus_root_search(const WeightParams& p, int resolution = 200);

struct RootNormRow {
    double theta, r1p, r1m, r2p, r2m;
};
std::vector<RootNormRow> root_norm_profile(const WeightParams& p, int samples);
void write_root_profile_csv(std::ostream& os, const std::vector<RootNormRow>& rows);

}  // namespace dimer
