#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dimer/lattice.hpp"
#include "dimer/spectral.hpp"

namespace dimer {

struct WindowInverse {
    FiniteWindow window;
    SparseKasteleynMatrix matrix;
    Eigen::MatrixXd inv;  // rows black, cols white
    double condition_estimate = 0.0;
    double residual = 0.0;  // max |K K^{-1} - I|

    // K^{-1}(w, b); on a cylinder the vertices may sit outside the fundamental rows
    double at(const VertexId& white, const VertexId& black) const;
};

WindowInverse window_inverse(const FiniteWindow& w, const WeightParams& p);

// selected rows K^{-1}(., b) only, via sparse LU; for windows too large for the dense path
struct WindowRows {
    FiniteWindow window;
    SparseKasteleynMatrix matrix;
    std::unordered_map<VertexId, Eigen::VectorXd, VertexHash> rows;  // keyed by canonical black vertex
    double residual = 0.0;  // max |K^T y - e_b| over the solved rows

    double at(const VertexId& white, const VertexId& black) const;
};

WindowRows window_inverse_rows(const FiniteWindow& w, const WeightParams& p, const std::vector<VertexId>& blacks);

struct TruncatedGreen {
    int N = 0, n0 = 0;
    std::vector<Mat2> G;  // index n + N
    Mat2 operator()(int n) const { return G.at(static_cast<std::size_t>(n + N)); }
};

// Fourier-reduced operator on [-N, N], zero outside, unit source at n0
TruncatedGreen truncated_green_solve(int n0, const Phase& w, int N, const WeightParams& p);

struct CountCheck {
    double det_abs = 0.0;
    double enum_weighted = 0.0;
    std::uint64_t enum_count = 0;
    bool agree = false;
};

CountCheck matching_count_check(const FiniteWindow& w, const WeightParams& p);

}  // namespace dimer
