#include "dimer/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace dimer {

namespace {

int floordiv2(int x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }

bool adjacent_pos(const VertexId& u, const VertexId& v) {
    if (is_black(u.sub) == is_black(v.sub)) return false;
    int dx = std::abs(u.x() - v.x()), dy = std::abs(u.y() - v.y());
    return dx + dy == 1;
}

const char* sub_name(Sublattice s) {
    switch (s) {
        case Sublattice::BUp: return "b_up";
        case Sublattice::BDown: return "b_down";
        case Sublattice::WUp: return "w_up";
        case Sublattice::WDown: return "w_down";
    }
    return "?";
}

}  // namespace

VertexId VertexId::at(int x, int y) {
    VertexId v;
    v.n = floordiv2(x);
    v.m = floordiv2(y);
    int px = x - 2 * v.n, py = y - 2 * v.m;
    if (px == 0 && py == 0) v.sub = Sublattice::BDown;
    else if (px == 1 && py == 0) v.sub = Sublattice::WDown;
    else if (px == 0 && py == 1) v.sub = Sublattice::WUp;
    else v.sub = Sublattice::BUp;
    return v;
}

std::string to_string(const VertexId& v) {
    std::ostringstream os;
    os << sub_name(v.sub) << "(" << v.n << "," << v.m << ")";
    return os.str();
}

std::optional<double> edge_weight(const VertexId& u, const VertexId& v, const WeightParams& p) {
    if (!adjacent_pos(u, v)) return std::nullopt;
    if (u.y() == v.y()) return 1.0;
    int x = u.x();
    int y0 = std::min(u.y(), v.y());
    int face = floordiv2(x);
    if (face > 0) return p.a;
    return ((x + y0) % 2 == 0) ? p.a : p.b;
}

int kasteleyn_sign(const VertexId& u, const VertexId& v) {
    if (!adjacent_pos(u, v)) return 0;
    if (u.y() == v.y()) return v.x() > u.x() ? 1 : -1;
    // even columns point down, odd columns point up
    bool down = (u.x() % 2 == 0);
    bool v_above = v.y() > u.y();
    return (v_above != down) ? 1 : -1;
}

double kasteleyn_entry(const VertexId& u, const VertexId& v, const WeightParams& p) {
    auto wt = edge_weight(u, v, p);
    if (!wt) return 0.0;
    const VertexId& b = is_black(u.sub) ? u : v;
    const VertexId& w = is_black(u.sub) ? v : u;
    return kasteleyn_sign(b, w) * *wt;
}

std::vector<VertexId> neighbours(const VertexId& v) {
    int x = v.x(), y = v.y();
    return {VertexId::at(x + 1, y), VertexId::at(x - 1, y), VertexId::at(x, y + 1),
            VertexId::at(x, y - 1)};
}

FiniteWindow::FiniteWindow(int n0, int n1, int m0, int m1, Boundary bc)
    : n_min(n0), n_max(n1), m_min(m0), m_max(m1), boundary(bc) {
    if (n1 < n0 || m1 < m0) throw PreconditionError("empty window");
    if (bc == Boundary::Cylinder && m1 - m0 + 1 < 2)
        throw PreconditionError("cylinder needs circumference >= 2");
}

bool FiniteWindow::contains(const VertexId& v) const {
    if (v.n < n_min || v.n > n_max || v.m < m_min || v.m > m_max) return false;
    return std::find(excluded.begin(), excluded.end(), v) == excluded.end();
}

std::vector<VertexId> FiniteWindow::vertices() const {
    std::vector<VertexId> out;
    for (int n = n_min; n <= n_max; ++n)
        for (int m = m_min; m <= m_max; ++m)
            for (auto s : {Sublattice::BDown, Sublattice::WDown, Sublattice::WUp, Sublattice::BUp}) {
                VertexId v{n, m, s};
                if (contains(v)) out.push_back(v);
            }
    return out;
}

VertexId FiniteWindow::canonical(const VertexId& v, int* sign) const {
    if (sign) *sign = 1;
    if (boundary != Boundary::Cylinder) return v;
    int L = circumference();
    int k = v.m - m_min;
    int wraps = (k >= 0) ? k / L : -((-k + L - 1) / L);
    VertexId out = v;
    out.m = v.m - wraps * L;
    if (sign && (wraps % 2 != 0)) *sign = static_cast<int>(seam_sign());
    return out;
}

std::vector<FiniteWindow::Edge> FiniteWindow::edges(const WeightParams& p) const {
    std::vector<Edge> out;
    for (const auto& b : vertices()) {
        if (!is_black(b.sub)) continue;
        for (const auto& w : neighbours(b)) {
            int twist = 1;
            VertexId wc = canonical(w, &twist);
            if (!contains(wc)) continue;
            double wt = *edge_weight(b, w, p);
            out.push_back({wc, b, wt, twist * kasteleyn_sign(b, w) * wt});
        }
    }
    return out;
}

SparseKasteleynMatrix build_window_matrix(const FiniteWindow& win, const WeightParams& p) {
    SparseKasteleynMatrix S;
    for (const auto& v : win.vertices()) {
        if (is_black(v.sub)) {
            S.black_index[v] = static_cast<int>(S.blacks.size());
            S.blacks.push_back(v);
        } else {
            S.white_index[v] = static_cast<int>(S.whites.size());
            S.whites.push_back(v);
        }
    }
    if (S.whites.empty() && S.blacks.empty()) throw PreconditionError("window is empty");
    S.status = S.square() ? MatrixStatus::Ok : MatrixStatus::CountMismatch;

    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& e : win.edges(p))
        trips.emplace_back(S.white_index.at(e.w), S.black_index.at(e.b), e.signed_weight);
    S.K.resize(static_cast<int>(S.whites.size()), static_cast<int>(S.blacks.size()));
    S.K.setFromTriplets(trips.begin(), trips.end());
    return S;
}

namespace {

struct Enumerator {
    int nv = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;
    MatchingCount out;

    void run(std::uint64_t used, double w) {
        if (used == ((nv == 64) ? ~0ull : ((1ull << nv) - 1))) {
            out.count++;
            out.weighted_sum += w;
            return;
        }
        int v = 0;
        while (used >> v & 1ull) ++v;
        for (auto [u, wt] : adj[v]) {
            if (used >> u & 1ull) continue;
            run(used | (1ull << v) | (1ull << u), w * wt);
        }
    }
};

}  // namespace

MatchingCount enumerate_matchings(const FiniteWindow& win, const WeightParams& p) {
    auto verts = win.vertices();
    if (static_cast<int>(verts.size()) > kEnumerationGuard)
        throw GuardError("enumeration guard exceeded: " + std::to_string(verts.size()) +
                         " vertices > " + std::to_string(kEnumerationGuard));
    Enumerator E;
    E.nv = static_cast<int>(verts.size());
    if (E.nv % 2) return {};
    std::unordered_map<VertexId, int, VertexHash> idx;
    for (int k = 0; k < E.nv; ++k) idx[verts[k]] = k;
    E.adj.resize(E.nv);
    for (const auto& e : win.edges(p)) {
        int i = idx.at(e.w), j = idx.at(e.b);
        E.adj[i].push_back({j, e.weight});
        E.adj[j].push_back({i, e.weight});
    }
    if (E.nv == 0) return {1, 1.0};
    E.run(0, 1.0);
    return E.out;
}

}  // namespace dimer
