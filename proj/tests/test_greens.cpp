#include <doctest.h>

#include "dimer/greens.hpp"
#include "dimer/oracle.hpp"
#include "dimer/quadrature.hpp"

using namespace dimer;

namespace {
const WeightParams P14(1.0, 4.0);

double coeff_gap(int n0, const Phase& w, const WeightParams& p) {
    auto A = coefficients(case_for(n0), n0, w, p);
    auto B = coefficients_by_solve(case_for(n0), n0, w, p);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (B.c_set[k]) worst = std::max(worst, std::abs(A.c[k] - B.c[k]) / std::abs(A.c[k]));
        if (B.d_set[k]) worst = std::max(worst, std::abs(A.d[k] - B.d[k]) / std::abs(A.d[k]));
    }
    return worst;
}
}  // namespace

TEST_CASE("closed-form coefficients match the linear solve") {
    CHECK(coeff_gap(1, Phase::from_theta(kPi / 3), P14) < 1e-10);
    CHECK(coeff_gap(0, Phase::from_theta(kPi / 2), P14) < 1e-10);
    CHECK(coeff_gap(3, Phase::from_theta(2.0), P14) < 1e-10);
    CHECK(coeff_gap(-2, Phase::from_theta(0.7), WeightParams(0.5, 3.0)) < 1e-10);
    const WeightParams ps[] = {P14, WeightParams(0.5, 3.0), WeightParams(1.0, 5.5)};
    double worst = 0.0;
    for (const auto& p : ps)
        for (int n0 = -3; n0 <= 3; ++n0)
            for (int k = 0; k < 8; ++k) worst = std::max(worst, coeff_gap(n0, Phase::from_theta(0.3 + 0.75 * k), p));
    CHECK(worst < 1e-10);
}

TEST_CASE("degenerate omega") {
    CHECK_THROWS_AS(coefficients(GreenCase::GT, 2, Phase::from_theta(0.0), P14), DegenerateError);
    CHECK_THROWS_AS(coefficients(GreenCase::GT, 0, Phase::from_theta(1.0), P14), PreconditionError);
    CHECK_THROWS_AS(coefficients(GreenCase::LT, 1, Phase::from_theta(1.0), P14), PreconditionError);
}

TEST_CASE("delta property") {
    for (const auto& p : {P14, WeightParams(0.5, 3.0), WeightParams(1.0, 1.0)})
        for (int n0 : {-3, -1, 0, 1, 2, 4})
            for (double th : {0.2, 1.3, 3.0, 5.1}) {
                Phase w = Phase::from_theta(th);
                for (int j = 0; j < 2; ++j) {
                    auto col = [&](int n) { return green_column(static_cast<Spin>(j), n, n0, w, p); };
                    for (int n = std::min(0, n0) - 5; n <= std::max(0, n0) + 5; ++n) {
                        Vec2 e = apply_operator(col, n, w, p);
                        if (n == n0) e(j) -= 1.0;
                        CHECK(e.cwiseAbs().maxCoeff() < 1e-10);
                    }
                }
            }
}

TEST_CASE("decay away from the source") {
    Phase w = Phase::from_theta(1.0);
    CHECK(std::abs(green_eval(Spin::Up, Spin::Up, -40, 2, w, P14)) <
          1e-20 * std::abs(green_eval(Spin::Up, Spin::Up, 0, 2, w, P14)));
    for (int n0 : {-2, 2})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Spin si = static_cast<Spin>(i), sj = static_cast<Spin>(j);
                CHECK(std::abs(green_eval(si, sj, n0 + 30, n0, w, P14)) <
                      std::abs(green_eval(si, sj, n0 + 10, n0, w, P14)));
                CHECK(std::abs(green_eval(si, sj, n0 - 30, n0, w, P14)) <
                      std::abs(green_eval(si, sj, n0 - 10, n0, w, P14)));
            }
}

TEST_CASE("transfer recurrence away from junctions") {
    Phase w = Phase::from_theta(1.0);
    const int n0 = 2;
    for (int n : {-6, -3, -1, 5, 8}) {
        Mat2 M = transfer_matrix(n <= 0 ? Side::Left : Side::Right, w, P14);
        for (Spin j : {Spin::Up, Spin::Down}) {
            Vec2 g = green_column(j, n, n0, w, P14), g1 = green_column(j, n + 1, n0, w, P14);
            CHECK((g1 - M * g).norm() < 1e-12 * std::max(g1.norm(), 1e-300));
        }
    }
}

TEST_CASE("branches at n = n0 differ by the unit jump") {
    Phase w = Phase::from_theta(0.4);
    const int n0 = 3;
    auto C = coefficients(GreenCase::GT, n0, w, P14);
    cplx at = green_eval(Spin::Up, Spin::Down, n0, n0, w, P14);
    cplx solve = assemble_column(coefficients_by_solve(GreenCase::GT, n0, w, P14), Spin::Down, n0, P14)(0);
    CHECK(std::abs(at - solve) < 1e-12);
    (void)C;
}

TEST_CASE("conjugate symmetry") {
    for (int n0 : {-2, 0, 1, 3})
        for (int n = -4; n <= 5; ++n) {
            Phase w = Phase::from_theta(1.1);
            Mat2 G = green_matrix(n, n0, w, P14), Gc = green_matrix(n, n0, w.conj(), P14);
            CHECK((Gc - G.conjugate()).norm() < 1e-12 * std::max(1.0, G.norm()));
        }
}

TEST_CASE("little g strips the n dependence") {
    Phase w = Phase::from_theta(1.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Spin si = static_cast<Spin>(i), sj = static_cast<Spin>(j);
            cplx gr = little_g(si, sj, FarRegion::RightFar, -1, w, P14);
            cplx r2m = root_pair(2, w, P14).r_minus;
            for (int n = 3; n <= 5; ++n)
                CHECK(std::abs(green_eval(si, sj, n, -1, w, P14) - gr * ipow(r2m, n)) < 1e-12);
            cplx gl = little_g(si, sj, FarRegion::LeftFar, 1, w, P14);
            cplx r1p = root_pair(1, w, P14).r_plus;
            for (int n = -5; n <= -3; ++n)
                CHECK(std::abs(green_eval(si, sj, n, 1, w, P14) - gl * ipow(r1p, n)) < 1e-12 * std::abs(gl * ipow(r1p, n)) + 1e-300);
        }
    CHECK(std::isfinite(std::abs(little_g(Spin::Up, Spin::Up, FarRegion::RightFar, -1, w, P14))));
    auto f = [](double th) { return little_g(Spin::Up, Spin::Up, FarRegion::LeftFar, 1, Phase::from_theta(th), P14); };
    auto lim = one_sided_limit(f, Endpoint::ZeroPlus);
    CHECK(std::isfinite(std::abs(lim.value)));
}

TEST_CASE("interface coefficient split") {
    Phase w = Phase::from_theta(0.5);
    auto s = interface_coeff_split(w, P14);
    auto r1 = root_pair(1, w, P14), r2 = root_pair(2, w, P14);
    for (int n0 = 1; n0 <= 5; ++n0) {
        cplx c4 = coefficients(GreenCase::GT, n0, w, P14).c[3];
        cplx rec = ipow(r2.r_minus, -n0) * s.c41 + ipow(r2.r_plus, -n0) * s.c42;
        CHECK(std::abs(rec - c4) < 1e-10 * std::abs(c4));
    }
    for (int n0 = 0; n0 >= -4; --n0) {
        cplx c1 = coefficients(GreenCase::LT, n0, w, P14).c[0];
        cplx rec = ipow(r1.r_plus, -n0) * s.c1p1 + ipow(r1.r_minus, -n0) * s.c1p2;
        CHECK(std::abs(rec - c1) < 1e-10 * std::abs(c1));
    }
    auto t = interface_coeff_split(w, P14, {2, 4}, {-1, -3});
    CHECK(std::abs(t.c41 - s.c41) < 1e-10 * std::abs(s.c41));
    CHECK(std::abs(t.c42 - s.c42) < 1e-10 * std::abs(s.c42));
    CHECK(std::abs(t.c1p1 - s.c1p1) < 1e-10 * std::abs(s.c1p1));
    CHECK(std::abs(t.c1p2 - s.c1p2) < 1e-10 * std::abs(s.c1p2));
}

TEST_CASE("truncated solve") {
    Phase w = Phase::from_theta(1.3);
    auto T = truncated_green_solve(2, w, 60, P14);
    auto T2 = truncated_green_solve(2, w, 120, P14);
    double d = 0.0, dd = 0.0;
    for (int n = -50; n <= 50; ++n) {
        d = std::max(d, (T(n) - green_matrix(n, 2, w, P14)).cwiseAbs().maxCoeff());
        dd = std::max(dd, (T(n) - T2(n)).cwiseAbs().maxCoeff());
    }
    CHECK(d < 1e-8);
    CHECK(dd < 1e-10);
    CHECK_THROWS_AS(truncated_green_solve(2, w, 5, P14), PreconditionError);
}
