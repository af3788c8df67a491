#include "dimer/inverse.hpp"

#include <ostream>

#include "dimer/format.hpp"
#include "dimer/parallel.hpp"

namespace dimer {

cplx gauge_factor(Spin i, Spin j, const Phase& w) {
    cplx s = (i == Spin::Up) ? cplx(1.0) : -w.omega;
    cplx t = (j == Spin::Up) ? cplx(1.0) : -1.0 / w.omega;
    return s * t;
}

cplx kernel_eval(Spin i, Spin j, int n, int n0, const Phase& w, const WeightParams& p) {
    return green_eval(i, j, n, n0, w, p) / gauge_factor(i, j, w);
}

InvKEntry invk_entry(Spin i, Spin j, int n0, int n, int m, const WeightParams& p, const QuadratureSpec& q) {
    // coefficients depend on theta only; fetch the column once per node
    auto f = [&](double th) {
        Phase w = Phase::from_theta(th);
        return kernel_eval(i, j, n, n0, w, p) * std::polar(1.0, th * m);
    };
    QuadResult R = integrate_circle(f, q, m);
    InvKEntry e;
    e.i = i;
    e.j = j;
    e.n0 = n0;
    e.n = n;
    e.m = m;
    e.value = R.value.real() / kTwoPi;
    e.imag_residual = std::abs(R.value.imag()) / kTwoPi;
    return e;
}

InvKEntry invk_vertices(const VertexId& white, const VertexId& black, const WeightParams& p, const QuadratureSpec& q) {
    if (is_black(white.sub) || !is_black(black.sub)) throw PreconditionError("expected (white, black) pair");
    return invk_entry(spin_of(white.sub), spin_of(black.sub), black.n, white.n, white.m - black.m, p, q);
}

double invk_uniform(Spin i, Spin j, int n, int m, const QuadratureSpec& q) {
    // K^{-1}(w_i(0,0), b_j(n,m)) = (1/4pi^2) int int adj(K)_{ji} / p  z^{-n} w^{-m}.
    // In z: (1/2pi i) oint N(z) z^{-n} / ((z - l+)(z - l-)) dz, and
    // (1/2pi i) oint z^k / ((z-l+)(z-l-)) dz = -l-^{|k|} / (l+ - l-)
    auto f = [&](double th) -> cplx {
        Phase w = Phase::from_theta(th);
        double s2 = 4.0 * std::pow(std::sin(0.5 * th), 2);  // c - 2
        double disc = std::sqrt(s2 * (s2 + 4.0));           // l+ - l-
        double lp = 0.5 * (2.0 + s2 + disc);
        double lm = 1.0 / lp;
        auto J = [&](int k) { return -std::pow(lm, std::abs(k)) / disc; };
        cplx val;
        if (j == Spin::Up && i == Spin::Up) val = J(-n) - J(-n - 1);           // 1 - 1/z
        else if (j == Spin::Up && i == Spin::Down) val = (1.0 - 1.0 / w.omega) * J(-n);
        else if (j == Spin::Down && i == Spin::Up) val = -w.omega_m1 * J(-n);  // 1 - w
        else val = J(1 - n) - J(-n);                                           // z - 1
        return val * std::polar(1.0, -th * m);
    };
    QuadResult R = integrate_circle(f, q, m);
    return R.value.real() / kTwoPi;
}

namespace {

void check_edges(const std::vector<EdgeRef>& edges) {
    if (edges.empty() || static_cast<int>(edges.size()) > kEdgeSetGuard)
        throw GuardError("edge set size must be 1.." + std::to_string(kEdgeSetGuard));
    for (const auto& [w, b] : edges)
        if (!edge_weight(w, b, WeightParams{}))
            throw PreconditionError("non-adjacent pair " + to_string(w) + " " + to_string(b));
}

}  // namespace

double edge_probability(const std::vector<EdgeRef>& edges, const WeightParams& p, const QuadratureSpec& q) {
    check_edges(edges);
    const int k = static_cast<int>(edges.size());
    Eigen::MatrixXd M(k, k);
    double prod = 1.0;
    for (int r = 0; r < k; ++r) {
        prod *= kasteleyn_entry(edges[r].second, edges[r].first, p);
        for (int c = 0; c < k; ++c) M(r, c) = invk_vertices(edges[r].first, edges[c].second, p, q).value;
    }
    return prod * M.determinant();
}

double edge_correlation(const EdgeRef& e1, const EdgeRef& e2, const WeightParams& p, const QuadratureSpec& q) {
    check_edges({e1, e2});
    double k1 = kasteleyn_entry(e1.second, e1.first, p), k2 = kasteleyn_entry(e2.second, e2.first, p);
    double x12 = invk_vertices(e1.first, e2.second, p, q).value;
    double x21 = invk_vertices(e2.first, e1.second, p, q).value;
    return -k1 * k2 * x12 * x21;
}

std::vector<InvKEntry> invk_sweep(Spin i, Spin j, int n0, int n_lo, int n_hi, int m_lo, int m_hi,
                                  const WeightParams& p, const QuadratureSpec& q) {
    if (n_hi < n_lo || m_hi < m_lo) throw PreconditionError("empty sweep rectangle");
    int nn = n_hi - n_lo + 1, nm = m_hi - m_lo + 1;
    std::vector<InvKEntry> out(static_cast<std::size_t>(nn) * nm);
    parallel_for(static_cast<int>(out.size()), [&](int k) {
        out[k] = invk_entry(i, j, n0, n_lo + k / nm, m_lo + k % nm, p, q);
    });
    return out;
}

void write_invk_csv(std::ostream& os, const std::vector<InvKEntry>& rows) {
    os << "i,j,n0,n,m,value,imag_residual\n";
    for (const auto& e : rows)
        os << spin_name(e.i) << ',' << spin_name(e.j) << ',' << e.n0 << ',' << e.n << ',' << e.m << ','
           << fmt17(e.value) << ',' << fmt17(e.imag_residual) << '\n';
}

}  // namespace dimer
