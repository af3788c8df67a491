#include "dimer/oracle.hpp"

#include "dimer/banded.hpp"

#include <Eigen/SparseLU>

namespace dimer {

double WindowInverse::at(const VertexId& white, const VertexId& black) const {
    int sw = 1, sb = 1;
    VertexId wc = window.canonical(white, &sw), bc = window.canonical(black, &sb);
    auto iw = matrix.white_index.find(wc);
    auto ib = matrix.black_index.find(bc);
    if (iw == matrix.white_index.end() || ib == matrix.black_index.end())
        throw PreconditionError("vertex outside window: " + to_string(white) + " / " + to_string(black));
    return sw * sb * inv(ib->second, iw->second);
}

WindowInverse window_inverse(const FiniteWindow& win, const WeightParams& p) {
    WindowInverse W;
    W.window = win;
    W.matrix = build_window_matrix(win, p);
    if (W.matrix.status != MatrixStatus::Ok)
        throw SingularError("white/black counts differ: no perfect matching");
    Eigen::MatrixXd K = W.matrix.dense();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    double rc = lu.rcond();
    if (!(rc > 1e-13)) throw SingularError("window matrix is singular (no perfect matching)");
    W.condition_estimate = 1.0 / rc;
    W.inv = lu.inverse();
    Eigen::MatrixXd R = W.matrix.K * W.inv;
    R.diagonal().array() -= 1.0;
    W.residual = R.cwiseAbs().maxCoeff();
    return W;
}

double WindowRows::at(const VertexId& white, const VertexId& black) const {
    int sw = 1, sb = 1;
    VertexId wc = window.canonical(white, &sw), bc = window.canonical(black, &sb);
    auto iw = matrix.white_index.find(wc);
    auto r = rows.find(bc);
    if (iw == matrix.white_index.end() || r == rows.end())
        throw PreconditionError("entry not available: " + to_string(white) + " / " + to_string(black));
    return sw * sb * r->second(iw->second);
}

WindowRows window_inverse_rows(const FiniteWindow& win, const WeightParams& p, const std::vector<VertexId>& blacks) {
    WindowRows W;
    W.window = win;
    W.matrix = build_window_matrix(win, p);
    if (W.matrix.status != MatrixStatus::Ok)
        throw SingularError("white/black counts differ: no perfect matching");
    // row b of K^{-1} solves K^T y = e_b
    Eigen::SparseMatrix<double> KT = W.matrix.K.transpose();
    KT.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(KT);
    if (lu.info() != Eigen::Success) throw SingularError("window matrix is singular (no perfect matching)");
    for (const auto& b : blacks) {
        VertexId bc = win.canonical(b);
        auto ib = W.matrix.black_index.find(bc);
        if (ib == W.matrix.black_index.end()) throw PreconditionError("black vertex outside window: " + to_string(b));
        if (W.rows.count(bc)) continue;
        Eigen::VectorXd e = Eigen::VectorXd::Zero(KT.rows());
        e(ib->second) = 1.0;
        Eigen::VectorXd y = lu.solve(e);
        W.residual = std::max(W.residual, (KT * y - e).cwiseAbs().maxCoeff());
        W.rows.emplace(bc, std::move(y));
    }
    return W;
}

TruncatedGreen truncated_green_solve(int n0, const Phase& w, int N, const WeightParams& p) {
    if (N < std::abs(n0) + 10) throw PreconditionError("need N >= |n0| + 10");
    auto [z1, z2] = z_funcs(w, p);
    if (z1 == cplx(0.0) || z2 == cplx(0.0)) throw DegenerateError("degenerate omega (z_i = 0)");
    const int size = 2 * (2 * N + 1);
    // unknown 2(n+N)+s, s = 0 up, 1 down; equation rows in the same order
    BandedMatrix A(size, 2, 2);
    for (int n = -N; n <= N; ++n) {
        cplx z = n <= 0 ? z1 : z2;
        int r = 2 * (n + N);
        A(r, r) = -1.0;
        A(r, r + 1) = -z / w.omega;
        if (n < N) A(r, r + 2) = 1.0;
        A(r + 1, r) = z;
        A(r + 1, r + 1) = 1.0;
        if (n > -N) A(r + 1, r - 1) = -1.0;
    }
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(size, 2);
    B(2 * (n0 + N), 0) = 1.0;
    B(2 * (n0 + N) + 1, 1) = 1.0;
    Eigen::MatrixXcd X = A.solve(B);
    TruncatedGreen T;
    T.N = N;
    T.n0 = n0;
    T.G.resize(2 * N + 1);
    for (int n = -N; n <= N; ++n) T.G[n + N] = X.middleRows(2 * (n + N), 2);
    return T;
}

CountCheck matching_count_check(const FiniteWindow& win, const WeightParams& p) {
    CountCheck c;
    auto mc = enumerate_matchings(win, p);
    c.enum_weighted = mc.weighted_sum;
    c.enum_count = mc.count;
    auto S = build_window_matrix(win, p);
    c.det_abs = S.status == MatrixStatus::Ok ? std::abs(S.dense().determinant()) : 0.0;
    double scale = std::max(c.enum_weighted, 1e-300);
    c.agree = std::abs(c.det_abs - c.enum_weighted) <= 1e-12 * scale;
    return c;
}

}  // namespace dimer
