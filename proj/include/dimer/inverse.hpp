#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "dimer/greens.hpp"
#include "dimer/lattice.hpp"
#include "dimer/quadrature.hpp"

namespace dimer {

// G_ij / (s_i t_j) with s = (1, -omega), t = (1, -1/omega): the Fourier
// kernel whose theta-integral gives the real-space inverse
cplx gauge_factor(Spin i, Spin j, const Phase& w);
cplx kernel_eval(Spin i, Spin j, int n, int n0, const Phase& w, const WeightParams& p);

struct InvKEntry {
    Spin i = Spin::Up, j = Spin::Up;
    int n0 = 0, n = 0, m = 0;
    double value = 0.0;
    double imag_residual = 0.0;
};

// K^{-1}(w_i(n, m), b_j(n0, 0)) on the interface lattice:
//   (1/2pi) int_0^{2pi} kernel_ij(n, n0; e^{it}) e^{itm} dt
InvKEntry invk_entry(Spin i, Spin j, int n0, int n, int m, const WeightParams& p, const QuadratureSpec& q = {});

// same entry addressed by vertices; uses m-translation invariance
InvKEntry invk_vertices(const VertexId& white, const VertexId& black, const WeightParams& p,
                        const QuadratureSpec& q = {});

// uniform lattice K^{-1}(w_i(0,0), b_j(n,m)), residue in z then quadrature in theta
double invk_uniform(Spin i, Spin j, int n, int m, const QuadratureSpec& q = {});
inline double invk_uniform(int n, int m, const QuadratureSpec& q = {}) {
    return invk_uniform(Spin::Up, Spin::Down, n, m, q);
}

using EdgeRef = std::pair<VertexId, VertexId>;  // (white, black)

constexpr int kEdgeSetGuard = 4;

// prod K(b_k, w_k) det[K^{-1}(w_k, b_l)]
double edge_probability(const std::vector<EdgeRef>& edges, const WeightParams& p, const QuadratureSpec& q = {});

// P(e1 and e2) - P(e1) P(e2) from the off-diagonal minor only, avoiding cancellation
double edge_correlation(const EdgeRef& e1, const EdgeRef& e2, const WeightParams& p, const QuadratureSpec& q = {});

std::vector<InvKEntry> invk_sweep(Spin i, Spin j, int n0, int n_lo, int n_hi, int m_lo, int m_hi,
                                  const WeightParams& p, const QuadratureSpec& q = {});
void write_invk_csv(std::ostream& os, const std::vector<InvKEntry>& rows);

}  // namespace dimer
