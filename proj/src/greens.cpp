#include "dimer/greens.hpp"

#include <cmath>
#include <vector>

namespace dimer {

namespace {

struct Sp {
    cplx w, z1, z2;
    cplx p1, m1, p2, m2;  // r1+, r1-, r2+, r2-
    cplx P1, M1, P2, M2;  // the same minus one
};

Sp load(const Phase& ph, const WeightParams& p) {
    Sp s;
    s.w = ph.omega;
    std::tie(s.z1, s.z2) = z_funcs(ph, p);
    auto r1 = root_pair(1, ph, p), r2 = root_pair(2, ph, p);
    s.p1 = r1.r_plus;
    s.m1 = r1.r_minus;
    s.p2 = r2.r_plus;
    s.m2 = r2.r_minus;
    s.P1 = r1.u_plus;
    s.M1 = r1.u_minus;
    s.P2 = r2.u_plus;
    s.M2 = r2.u_minus;
    return s;
}

cplx guard(cplx den, const char* what) {
    if (!(std::abs(den) > 0.0) || !std::isfinite(std::abs(den)))
        throw DegenerateError(std::string("degenerate denominator: ") + what);
    return den;
}

Vec2 basis(int side, Branch br, const Phase& w, const WeightParams& p, int n, const RootPair& rp) {
    Vec2 v = eigvec(side, br, w, p).v;
    return v * ipow(br == Branch::Plus ? rp.r_plus : rp.r_minus, n);
}

}  // namespace

Vec2 apply_operator(const std::function<Vec2(int)>& G, int n, const Phase& w, const WeightParams& p) {
    cplx z = z_side(n <= 0 ? 1 : 2, w, p);
    Vec2 g = G(n), gp = G(n + 1), gm = G(n - 1);
    Vec2 out;
    out(0) = gp(0) - g(0) - z / w.omega * g(1);
    out(1) = z * g(0) + g(1) - gm(1);
    return out;
}

GreenCoeffs coefficients(GreenCase k, int n0, const Phase& ph, const WeightParams& p) {
    if (k == GreenCase::GT && n0 <= 0) throw PreconditionError("GT case needs n0 > 0");
    if (k == GreenCase::LT && n0 > 0) throw PreconditionError("LT case needs n0 <= 0");
    Sp s = load(ph, p);
    guard(s.z2, "z2 = 0");
    guard(s.z1, "z1 = 0");
    GreenCoeffs C;
    C.kase = k;
    C.n0 = n0;
    C.omega = ph;
    const cplx w = s.w, z1 = s.z1, z2 = s.z2;
    const cplx p1 = s.p1, m1 = s.m1, p2 = s.p2, m2 = s.m2;
    // r - 1 factors; e.g. (-1 + m2) == M2, (1 - p1) == -P1
    const cplx P1 = s.P1, M1 = s.M1, P2 = s.P2, M2 = s.M2;

    // p1 z1 (-1+m2) + m2 z2 (1-p1)
    cplx denA = guard(p1 * z1 * M2 - m2 * z2 * P1, "p1 z1 (m2-1) + m2 z2 (1-p1)");

    if (k == GreenCase::GT) {
        cplx d22 = guard(P2 - M2, "r2+ - r2-");
        cplx p2n0 = ipow(p2, -n0), m2n0 = ipow(m2, -n0);
        C.c[0] = -M2 * p2n0 * w / denA;
        C.c[1] = M2 * p2n0 * w / (z2 * d22);
        C.c[2] = M2 * p2n0 * w * (-p1 * z1 * P2 + p2 * z2 * P1) / (-d22 * z2 * -denA);
        C.c[3] = m2n0 * P2 * w / (z2 * d22) + C.c[2];
        cplx p2n1 = ipow(p2, 1 - n0);
        C.d[0] = -m2 * p2n1 * z2 / -denA;
        C.d[1] = m2 * p2n1 / -d22;
        C.d[2] = m2 * p2n1 * (p1 * z1 * P2 - p2 * z2 * P1) / (d22 * denA);
        C.d[3] = p2 * ipow(m2, 1 - n0) / -d22 + C.d[2];
    } else {
        cplx d11 = guard(P1 - M1, "r1+ - r1-");
        cplx m1n0 = ipow(m1, -n0), p1n0 = ipow(p1, -n0);
        cplx br = m1 * z1 * M2 - m2 * z2 * M1;  // m1 z1 (-1+m2) + m2 z2 (1-m1)
        C.c[1] = m1n0 * P1 * w * br / (-d11 * z1 * denA);
        C.c[0] = M1 * p1n0 * w / (d11 * z1) + C.c[1];
        C.c[2] = m1n0 * P1 * w / (d11 * z1);
        C.c[3] = m1n0 * P1 * w / -denA;
        cplx m1n1 = ipow(m1, 1 - n0);
        C.d[1] = m1n1 * p1 * br / (d11 * denA);
        C.d[0] = m1 * ipow(p1, 1 - n0) / -d11 + C.d[1];
        C.d[2] = m1n1 * p1 / -d11;
        C.d[3] = m1n1 * p1 * z1 / denA;
    }
    return C;
}

int region_terms(GreenCase k, Spin j, int n, int n0, std::array<AnsatzTerm, 2>& t) {
    const bool up = (j == Spin::Up);
    if (k == GreenCase::GT) {
        if (n <= 0) {
            t[0] = {0, 1, Branch::Plus};
            return 1;
        }
        bool mid = up ? (n <= n0) : (n < n0);
        if (mid) {
            t[0] = {1, 2, Branch::Plus};
            t[1] = {2, 2, Branch::Minus};
            return 2;
        }
        t[0] = {3, 2, Branch::Minus};
        return 1;
    }
    if (n > 0) {
        t[0] = {3, 2, Branch::Minus};
        return 1;
    }
    bool left = up ? (n <= n0) : (n < n0);
    if (left) {
        t[0] = {0, 1, Branch::Plus};
        return 1;
    }
    t[0] = {1, 1, Branch::Plus};
    t[1] = {2, 1, Branch::Minus};
    return 2;
}

Vec2 assemble_column(const GreenCoeffs& C, Spin j, int n, const WeightParams& p) {
    std::array<AnsatzTerm, 2> t;
    int cnt = region_terms(C.kase, j, n, C.n0, t);
    const auto& coef = C.column(j);
    Vec2 out = Vec2::Zero();
    for (int q = 0; q < cnt; ++q) {
        auto rp = root_pair(t[q].side, C.omega, p);
        out += coef[t[q].coeff] * basis(t[q].side, t[q].branch, C.omega, p, n, rp);
    }
    return out;
}

GreenCoeffs coefficients_by_solve(GreenCase k, int n0, const Phase& ph, const WeightParams& p) {
    if (k == GreenCase::GT && n0 <= 0) throw PreconditionError("GT case needs n0 > 0");
    if (k == GreenCase::LT && n0 > 0) throw PreconditionError("LT case needs n0 <= 0");
    auto [z1, z2] = z_funcs(ph, p);
    if (z1 == cplx(0.0) || z2 == cplx(0.0)) throw DegenerateError("degenerate matching system: z_i = 0");

    GreenCoeffs C;
    C.kase = k;
    C.n0 = n0;
    C.omega = ph;
    const int lo = std::min(0, n0) - 2, hi = std::max(0, n0) + 3;
    const int rows = 2 * (hi - lo + 1);

    for (Spin j : {Spin::Up, Spin::Down}) {
        // operator applied to each unit coefficient vector gives one column
        Eigen::MatrixXcd A(rows, 4);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
        for (int q = 0; q < 4; ++q) {
            GreenCoeffs B = C;
            B.c.fill(0.0);
            B.d.fill(0.0);
            (j == Spin::Up ? B.c : B.d)[q] = 1.0;
            auto col = [&](int n) { return assemble_column(B, j, n, p); };
            for (int n = lo; n <= hi; ++n) {
                Vec2 r = apply_operator(col, n, ph, p);
                A(2 * (n - lo), q) = r(0);
                A(2 * (n - lo) + 1, q) = r(1);
            }
        }
        rhs(2 * (n0 - lo) + (j == Spin::Up ? 0 : 1)) = 1.0;

        double scale = A.colwise().norm().maxCoeff();
        std::vector<int> live;
        auto& set = (j == Spin::Up ? C.c_set : C.d_set);
        for (int q = 0; q < 4; ++q) {
            set[q] = A.col(q).norm() > 1e-12 * scale;
            if (set[q]) live.push_back(q);
        }
        Eigen::MatrixXcd Al(rows, static_cast<int>(live.size()));
        for (std::size_t q = 0; q < live.size(); ++q) Al.col(q) = A.col(live[q]);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(Al);
        if (qr.rank() < static_cast<int>(live.size()))
            throw SingularError("singular matching system");
        Eigen::VectorXcd x = qr.solve(rhs);
        double res = (Al * x - rhs).norm();
        if (!(res < 1e-8)) throw SingularError("matching system inconsistent, residual " + std::to_string(res));
        auto& dst = (j == Spin::Up ? C.c : C.d);
        dst.fill(0.0);
        for (std::size_t q = 0; q < live.size(); ++q) dst[live[q]] = x(q);
    }
    return C;
}

Vec2 green_column(Spin j, int n, int n0, const Phase& w, const WeightParams& p) {
    return assemble_column(coefficients(case_for(n0), n0, w, p), j, n, p);
}

Mat2 green_matrix(int n, int n0, const Phase& w, const WeightParams& p) {
    auto C = coefficients(case_for(n0), n0, w, p);
    Mat2 G;
    G.col(0) = assemble_column(C, Spin::Up, n, p);
    G.col(1) = assemble_column(C, Spin::Down, n, p);
    return G;
}

cplx green_eval(Spin i, Spin j, int n, int n0, const Phase& w, const WeightParams& p) {
    return green_column(j, n, n0, w, p)(static_cast<int>(i));
}

cplx little_g(Spin i, Spin j, FarRegion region, int n0, const Phase& w, const WeightParams& p) {
    auto C = coefficients(case_for(n0), n0, w, p);
    const auto& coef = C.column(j);
    int idx = static_cast<int>(i);
    if (region == FarRegion::RightFar)
        return coef[3] * eigvec(2, Branch::Minus, w, p).v(idx);
    return coef[0] * eigvec(1, Branch::Plus, w, p).v(idx);
}

CoeffSplit interface_coeff_split(const Phase& w, const WeightParams& p, std::array<int, 2> gt,
                                 std::array<int, 2> lt) {
    if (gt[0] == gt[1] || lt[0] == lt[1]) throw PreconditionError("need two distinct n0 values");
    auto solve2 = [](cplx a11, cplx a12, cplx a21, cplx a22, cplx b1, cplx b2, const char* what) {
        cplx det = a11 * a22 - a12 * a21;
        if (!(std::abs(det) > 1e-300)) throw SingularError(std::string("singular split extraction: ") + what);
        return std::pair<cplx, cplx>{(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
    };
    auto r1 = root_pair(1, w, p), r2 = root_pair(2, w, p);
    if (r2.degenerate || r2.u_plus == r2.u_minus) throw SingularError("singular split extraction: r2+ = r2-");
    CoeffSplit out;
    cplx ca = coefficients(GreenCase::GT, gt[0], w, p).c[3];
    cplx cb = coefficients(GreenCase::GT, gt[1], w, p).c[3];
    std::tie(out.c41, out.c42) =
        solve2(ipow(r2.r_minus, -gt[0]), ipow(r2.r_plus, -gt[0]), ipow(r2.r_minus, -gt[1]),
               ipow(r2.r_plus, -gt[1]), ca, cb, "c4");
    cplx la = coefficients(GreenCase::LT, lt[0], w, p).c[0];
    cplx lb = coefficients(GreenCase::LT, lt[1], w, p).c[0];
    std::tie(out.c1p1, out.c1p2) =
        solve2(ipow(r1.r_plus, -lt[0]), ipow(r1.r_minus, -lt[0]), ipow(r1.r_plus, -lt[1]),
               ipow(r1.r_minus, -lt[1]), la, lb, "c'1");
    return out;
}

}  // namespace dimer
