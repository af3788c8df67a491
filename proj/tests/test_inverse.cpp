#include <doctest.h>

#include <sstream>

#include "dimer/inverse.hpp"
#include "dimer/oracle.hpp"

using namespace dimer;

namespace {
const WeightParams P14(1.0, 4.0);
const WeightParams U(1.0, 1.0);
}  // namespace

TEST_CASE("uniform degeneration") {
    CHECK(invk_entry(Spin::Up, Spin::Up, 1, 1, 0, U).value == doctest::Approx(invk_uniform(Spin::Up, Spin::Up, 0, 0)).epsilon(1e-6));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (auto [n0, n, m] : std::vector<std::array<int, 3>>{{1, 1, 0}, {2, 4, -1}, {-2, 1, 3}, {0, 0, 2}}) {
                Spin si = static_cast<Spin>(i), sj = static_cast<Spin>(j);
                CHECK(std::abs(invk_entry(si, sj, n0, n, m, U).value - invk_uniform(si, sj, n0 - n, -m)) < 1e-6);
            }
}

TEST_CASE("uniform reference") {
    // the four edges at one white vertex carry probability 1/4 each
    VertexId w{0, 0, Sublattice::WUp};
    for (const auto& b : neighbours(w)) {
        double p = kasteleyn_entry(b, w, U) * invk_vertices(w, b, U).value;
        CHECK(p == doctest::Approx(0.25).epsilon(1e-8));
    }
    for (int n = -3; n <= 3; ++n)
        for (int m = -3; m <= 3; ++m)
            CHECK(invk_uniform(-n, -m) == doctest::Approx(-invk_uniform(n, m + 1)).epsilon(1e-8));
    // critical 1/m decay along a column
    double v8 = invk_uniform(0, 8), v16 = invk_uniform(0, 16), v32 = invk_uniform(0, 32);
    CHECK(v8 / v16 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(v16 / v32 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("entries are real") {
    for (int n0 : {-2, 0, 1, 3})
        for (int m : {-2, 0, 4})
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    auto e = invk_entry(static_cast<Spin>(i), static_cast<Spin>(j), n0, 2, m, P14);
                    CHECK(e.imag_residual < 1e-8 * std::max(1.0, std::abs(e.value)));
                }
}

TEST_CASE("lattice operator applied to the integrated column") {
    for (auto [n0, j] : std::vector<std::pair<int, Spin>>{{2, Spin::Up}, {-1, Spin::Down}, {0, Spin::Up}}) {
        VertexId src{n0, 0, black(j)};
        for (int n = n0 - 2; n <= n0 + 2; ++n)
            for (int m = -2; m <= 2; ++m)
                for (Sublattice s : {Sublattice::BUp, Sublattice::BDown}) {
                    VertexId b{n, m, s};
                    double acc = 0.0;
                    for (const auto& w : neighbours(b)) acc += kasteleyn_entry(b, w, P14) * invk_vertices(w, src, P14).value;
                    CHECK(std::abs(acc - (b == src ? 1.0 : 0.0)) < 1e-6);
                }
    }
}

TEST_CASE("cylinder oracle at an interior probe") {
    const int L = 160;
    FiniteWindow win(-15, 3 * L / 2, -L / 2, L / 2 - 1, Boundary::Cylinder);
    VertexId b{2, 0, Sublattice::BUp}, w{5, 3, Sublattice::WUp};
    auto W = window_inverse_rows(win, P14, {b});
    double v = invk_entry(Spin::Up, Spin::Up, 2, 5, 3, P14).value;
    CHECK(W.at(w, b) == doctest::Approx(v).epsilon(0.02));
    CHECK(invk_vertices(w, b, P14).value == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("edge probabilities") {
    VertexId w{0, 0, Sublattice::WUp};
    auto nb = neighbours(w);
    CHECK(edge_probability({{w, nb[0]}}, U) == doctest::Approx(0.25).epsilon(1e-8));
    for (int n : {-2, 0, 1, 3}) {
        VertexId x{n, 1, Sublattice::WDown};
        double s = 0.0;
        for (const auto& b : neighbours(x)) s += edge_probability({{x, b}}, P14);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-3));
    }
    // two edges at the same white vertex never co-occur
    CHECK(std::abs(edge_probability({{w, nb[0]}, {w, nb[1]}}, P14)) < 1e-8);
    CHECK_THROWS_AS(edge_probability({{w, VertexId{4, 4, Sublattice::BUp}}}, P14), PreconditionError);
    std::vector<EdgeRef> five(5, {w, nb[0]});
    CHECK_THROWS(edge_probability(five, P14));
}

TEST_CASE("edge correlation decays on the frozen side") {
    // horizontal edges w_up(n,0) - b_up(n,0) deep on the left, separated along n
    auto edge = [](int n) { return EdgeRef{VertexId{n, 0, Sublattice::WUp}, VertexId{n, 0, Sublattice::BUp}}; };
    QuadratureSpec q;
    q.abs_tol = 1e-300;
    q.rel_tol = 1e-9;
    // least squares over a wide range: short separations carry a non-exponential prefactor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int s = 4; s <= 32; s += 4) {
        double y = std::log(std::abs(edge_correlation(edge(-60), edge(-60 + s), P14, q)));
        sx += s;
        sy += y;
        sxx += double(s) * s;
        sxy += s * y;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double target = 2.0 * std::log(std::abs(root_pair(1, Phase::from_theta(0.0), P14).r_minus));
    MESSAGE("correlation slope " << slope << " vs " << target);
    CHECK(slope == doctest::Approx(target).epsilon(0.05));
    // consistent with the full 2x2 determinant
    double direct = edge_probability({edge(-30), edge(-26)}, P14) -
                    edge_probability({edge(-30)}, P14) * edge_probability({edge(-26)}, P14);
    CHECK(direct == doctest::Approx(edge_correlation(edge(-30), edge(-26), P14)).epsilon(1e-3));
}

TEST_CASE("sweep") {
    auto rows = invk_sweep(Spin::Up, Spin::Down, 1, -1, 1, 0, 2, P14);
    REQUIRE(rows.size() == 9);
    CHECK(rows[5].n == 0);
    CHECK(rows[5].m == 2);
    CHECK(rows[5].value == invk_entry(Spin::Up, Spin::Down, 1, 0, 2, P14).value);
    std::ostringstream os;
    write_invk_csv(os, rows);
    CHECK(os.str().rfind("i,j,n0,n,m,value,imag_residual\nup,down,1,-1,0,", 0) == 0);
    CHECK_THROWS_AS(invk_sweep(Spin::Up, Spin::Up, 1, 2, 1, 0, 0, P14), PreconditionError);
}
