#include <doctest.h>

#include "dimer/lattice.hpp"
#include "dimer/oracle.hpp"

using namespace dimer;

namespace {
const WeightParams P14(1.0, 4.0);
VertexId v(int n, int m, Sublattice s) { return VertexId{n, m, s}; }
}  // namespace

TEST_CASE("weights must be positive") {
    CHECK_THROWS_AS(WeightParams(0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(WeightParams(1.0, -2.0), PreconditionError);
    CHECK(WeightParams(1.0, 4.0).strong_interface());
    CHECK_FALSE(WeightParams(1.0, 3.0).strong_interface());
}

TEST_CASE("edge weights") {
    using S = Sublattice;
    CHECK(edge_weight(v(0, 0, S::BUp), v(1, 0, S::WUp), P14).value() == 1.0);
    CHECK(edge_weight(v(0, 0, S::BUp), v(0, 0, S::WDown), P14).value() == 4.0);
    CHECK(edge_weight(v(1, 0, S::BUp), v(1, 0, S::WDown), P14).value() == 1.0);
    CHECK_FALSE(edge_weight(v(0, 0, S::BUp), v(5, 5, S::WUp), P14).has_value());
    CHECK_FALSE(edge_weight(v(0, 0, S::BUp), v(0, 0, S::BDown), P14).has_value());
}

TEST_CASE("orientation signs") {
    using S = Sublattice;
    CHECK(kasteleyn_sign(v(0, 0, S::BUp), v(1, 0, S::WUp)) == 1);
    CHECK(kasteleyn_sign(v(0, 0, S::BDown), v(-1, 0, S::WDown)) == -1);
    CHECK(kasteleyn_sign(v(0, 0, S::BUp), v(0, 0, S::BDown)) == 0);
}

TEST_CASE("operator rows on a black up vertex, n <= 0") {
    // K b_up = w_up(n+1) - w_up(n) + a w_down(n, m+1) - b w_down(n)
    using S = Sublattice;
    VertexId b = v(-1, 2, S::BUp);
    CHECK(kasteleyn_entry(b, v(0, 2, S::WUp), P14) == doctest::Approx(1.0));
    CHECK(kasteleyn_entry(b, v(-1, 2, S::WUp), P14) == doctest::Approx(-1.0));
    CHECK(kasteleyn_entry(b, v(-1, 3, S::WDown), P14) == doctest::Approx(1.0));
    CHECK(kasteleyn_entry(b, v(-1, 2, S::WDown), P14) == doctest::Approx(-4.0));
}

TEST_CASE("local structure in a window") {
    FiniteWindow win(-3, 3, -2, 2);
    for (const auto& u : win.vertices()) {
        auto nb = neighbours(u);
        CHECK(nb.size() == 4);
        for (const auto& w : nb) {
            CHECK(kasteleyn_sign(u, w) == -kasteleyn_sign(w, u));
            CHECK(kasteleyn_sign(u, w) != 0);
            auto wt = edge_weight(u, w, P14);
            REQUIRE(wt.has_value());
            CHECK(*wt > 0.0);
            CHECK(*wt == edge_weight(w, u, P14).value());
            CHECK(is_black(u.sub) != is_black(w.sub));
        }
    }
    using S = Sublattice;
    for (int n = -3; n <= 3; ++n)
        for (int m = -2; m <= 2; ++m) {
            double e1 = *edge_weight(v(n, m, S::BDown), v(n, m, S::WUp), P14);
            double e2 = *edge_weight(v(n, m, S::WDown), v(n, m, S::BUp), P14);
            if (n <= 0) {
                CHECK(std::min(e1, e2) == 1.0);
                CHECK(std::max(e1, e2) == 4.0);
            } else {
                CHECK(e1 == 1.0);
                CHECK(e2 == 1.0);
            }
        }
}

TEST_CASE("window matrix") {
    auto one = build_window_matrix(FiniteWindow(0, 0, 0, 0), WeightParams(1.0, 1.0));
    REQUIRE(one.status == MatrixStatus::Ok);
    CHECK(one.K.rows() == 2);
    CHECK(std::abs(one.dense().determinant()) == doctest::Approx(2.0));
    auto two = build_window_matrix(FiniteWindow(0, 1, 0, 1), WeightParams(1.0, 1.0));
    CHECK(std::abs(two.dense().determinant()) == doctest::Approx(36.0));
    // at most four entries per row and column
    for (int k = 0; k < two.K.outerSize(); ++k) CHECK(two.K.col(k).nonZeros() <= 4);
    for (std::size_t k = 0; k < two.whites.size(); ++k) CHECK(two.white_index.at(two.whites[k]) == int(k));

    FiniteWindow odd(0, 1, 0, 1);
    odd.excluded.push_back(v(0, 0, Sublattice::BDown));
    CHECK(build_window_matrix(odd, WeightParams(1.0, 1.0)).status == MatrixStatus::CountMismatch);
}

TEST_CASE("matching enumeration") {
    const WeightParams u(1.0, 1.0);
    CHECK(enumerate_matchings(FiniteWindow(0, 0, 0, 0), u).count == 2);
    CHECK(enumerate_matchings(FiniteWindow(0, 1, 0, 1), u).count == 36);
    CHECK(enumerate_matchings(FiniteWindow(0, 0, 0, 1), u).count == 5);
    CHECK_THROWS_AS(enumerate_matchings(FiniteWindow(0, 3, 0, 3), u), GuardError);
}

TEST_CASE("determinant equals weighted enumeration") {
    for (const auto& p : {WeightParams(1.0, 1.0), WeightParams(1.0, 4.0), WeightParams(0.5, 3.0)})
        for (auto [n0, n1, m1] : std::vector<std::array<int, 3>>{{0, 0, 0}, {-1, 0, 1}, {-1, 1, 2}, {-2, 0, 1}}) {
            auto c = matching_count_check(FiniteWindow(n0, n1, 0, m1), p);
            CHECK(c.agree);
            CHECK(c.det_abs == doctest::Approx(c.enum_weighted).epsilon(1e-12));
        }
}

TEST_CASE("cylinder wrap") {
    FiniteWindow cyl(0, 2, 0, 3, Boundary::Cylinder);
    int s = 0;
    auto c = cyl.canonical(v(1, 5, Sublattice::WUp), &s);
    CHECK(c.m == 1);
    CHECK(s == -1);  // one wrap flips the sign
    FiniteWindow odd(0, 2, 0, 2, Boundary::Cylinder);
    odd.canonical(v(1, -4, Sublattice::WUp), &s);
    CHECK(s == 1);  // two wraps
    for (const auto& p : {WeightParams(1.0, 1.0), WeightParams(1.0, 4.0)})
        for (int L : {2, 3, 4})
            CHECK(matching_count_check(FiniteWindow(-1, 0, 0, L - 1, Boundary::Cylinder), p).agree);
}
