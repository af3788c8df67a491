#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Sparse>

#include "dimer/common.hpp"

namespace dimer {

enum class Sublattice { BUp, BDown, WUp, WDown };

inline bool is_black(Sublattice s) { return s == Sublattice::BUp || s == Sublattice::BDown; }
inline Spin spin_of(Sublattice s) {
    return (s == Sublattice::BUp || s == Sublattice::WUp) ? Spin::Up : Spin::Down;
}
inline Sublattice white(Spin s) { return s == Spin::Up ? Sublattice::WUp : Sublattice::WDown; }
inline Sublattice black(Spin s) { return s == Spin::Up ? Sublattice::BUp : Sublattice::BDown; }

struct VertexId {
    int n = 0;
    int m = 0;
    Sublattice sub = Sublattice::BDown;

    bool operator==(const VertexId&) const = default;

    // planar coordinates:  b_down (2n,2m)  w_down (2n+1,2m)  w_up (2n,2m+1)  b_up (2n+1,2m+1)
    int x() const { return 2 * n + ((sub == Sublattice::WDown || sub == Sublattice::BUp) ? 1 : 0); }
    int y() const { return 2 * m + ((sub == Sublattice::WUp || sub == Sublattice::BUp) ? 1 : 0); }
    static VertexId at(int x, int y);
};

struct VertexHash {
    std::size_t operator()(const VertexId& v) const {
        std::size_t h = std::hash<int>()(v.n);
        h = h * 1000003u ^ std::hash<int>()(v.m);
        return h * 31u + static_cast<std::size_t>(v.sub);
    }
};

std::string to_string(const VertexId& v);

// weight of edge uv, empty if not adjacent
std::optional<double> edge_weight(const VertexId& u, const VertexId& v, const WeightParams& p);

// orientation sign s(u,v): +1 if the edge points u -> v
int kasteleyn_sign(const VertexId& u, const VertexId& v);

// K(b,w) = s(b,w) wt(b,w), argument order free (black vertex found automatically)
double kasteleyn_entry(const VertexId& u, const VertexId& v, const WeightParams& p);

// the four lattice neighbours of v
std::vector<VertexId> neighbours(const VertexId& v);

enum class Boundary { Open, Cylinder };

struct FiniteWindow {
    int n_min = 0, n_max = 0, m_min = 0, m_max = 0;
    Boundary boundary = Boundary::Open;
    // open windows only: vertices removed from the rectangle
    std::vector<VertexId> excluded;

    FiniteWindow() = default;
    FiniteWindow(int n0, int n1, int m0, int m1, Boundary bc = Boundary::Open);

    int circumference() const { return m_max - m_min + 1; }
    bool contains(const VertexId& v) const;
    std::vector<VertexId> vertices() const;
    // wrap m into range (cylinder); sign picks up the seam twist
    VertexId canonical(const VertexId& v, int* sign = nullptr) const;
    double seam_sign() const { return -1.0; }  // for any circumference

    struct Edge {
        VertexId w, b;
        double weight;
        double signed_weight;
    };
    std::vector<Edge> edges(const WeightParams& p) const;
};

enum class MatrixStatus { Ok, CountMismatch };

struct SparseKasteleynMatrix {
    MatrixStatus status = MatrixStatus::Ok;
    Eigen::SparseMatrix<double> K;  // rows white, cols black
    std::vector<VertexId> whites, blacks;
    std::unordered_map<VertexId, int, VertexHash> white_index, black_index;

    bool square() const { return whites.size() == blacks.size(); }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(K); }
};

SparseKasteleynMatrix build_window_matrix(const FiniteWindow& w, const WeightParams& p);

struct MatchingCount {
    std::uint64_t count = 0;
    double weighted_sum = 0.0;
};

constexpr int kEnumerationGuard = 36;

MatchingCount enumerate_matchings(const FiniteWindow& w, const WeightParams& p);

}  // namespace dimer
