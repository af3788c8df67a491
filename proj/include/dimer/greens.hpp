#pragma once

#include <array>
#include <functional>
#include <string>

#include "dimer/spectral.hpp"

namespace dimer {

enum class GreenCase { GT, LT };  // n0 > 0 / n0 <= 0

inline GreenCase case_for(int n0) { return n0 > 0 ? GreenCase::GT : GreenCase::LT; }

struct GreenCoeffs {
    GreenCase kase = GreenCase::GT;
    int n0 = 1;
    Phase omega{};
    // c1..c4 (column up) and d1..d4 (column down); primed set for LT
    std::array<cplx, 4> c{}, d{};
    // false where the coefficient multiplies an empty region (solver leaves it free)
    std::array<bool, 4> c_set{true, true, true, true}, d_set{true, true, true, true};

    const std::array<cplx, 4>& column(Spin j) const { return j == Spin::Up ? c : d; }
};

// Fourier-reduced operator rows at n applied to a column n -> G(n)
Vec2 apply_operator(const std::function<Vec2(int)>& G, int n, const Phase& w, const WeightParams& p);

GreenCoeffs coefficients(GreenCase k, int n0, const Phase& w, const WeightParams& p);
GreenCoeffs coefficients_by_solve(GreenCase k, int n0, const Phase& w, const WeightParams& p);

// the ansatz basis: region terms for column j at n
struct AnsatzTerm {
    int coeff;  // 0..3
    int side;   // 1 or 2
    Branch branch;
};
int region_terms(GreenCase k, Spin j, int n, int n0, std::array<AnsatzTerm, 2>& out);

// (G_up j, G_down j) at n from a coefficient set
Vec2 assemble_column(const GreenCoeffs& C, Spin j, int n, const WeightParams& p);

Vec2 green_column(Spin j, int n, int n0, const Phase& w, const WeightParams& p);
Mat2 green_matrix(int n, int n0, const Phase& w, const WeightParams& p);
cplx green_eval(Spin i, Spin j, int n, int n0, const Phase& w, const WeightParams& p);
inline cplx green_eval(Spin i, Spin j, int n, int n0, cplx omega, const WeightParams& p) {
    return green_eval(i, j, n, n0, Phase::from_omega(omega), p);
}

enum class FarRegion { RightFar, LeftFar };

// G = g r^n in the far regions (r = r2- on the right, r1+ on the left)
cplx little_g(Spin i, Spin j, FarRegion region, int n0, const Phase& w, const WeightParams& p);

struct CoeffSplit {
    cplx c41, c42, c1p1, c1p2;
};
// c4(n0) = r2-^{-n0} c41 + r2+^{-n0} c42 ;  c'1(n0) = r1+^{-n0} c'11 + r1-^{-n0} c'12
CoeffSplit interface_coeff_split(const Phase& w, const WeightParams& p, std::array<int, 2> gt_n0 = {1, 2},
                                 std::array<int, 2> lt_n0 = {0, -1});

}  // namespace dimer
