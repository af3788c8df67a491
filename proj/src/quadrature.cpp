#include "dimer/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <queue>
#include <tuple>
#include <vector>

namespace dimer {

namespace {

// 15-point Kronrod with embedded 7-point Gauss
constexpr std::array<double, 8> xk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    cplx val;
    double err;
    double floor;  // roundoff level of this panel
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<cplx(double)>& f, double lo, double hi) {
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    cplx fc = f(c);
    std::array<cplx, 15> fv;
    fv[14] = fc;
    cplx rk = fc * wk[7], rg = fc * wg[3];
    double ra = std::abs(fc) * wk[7];
    for (int k = 0; k < 7; ++k) {
        cplx f1 = f(c - h * xk[k]), f2 = f(c + h * xk[k]);
        fv[2 * k] = f1;
        fv[2 * k + 1] = f2;
        rk += wk[k] * (f1 + f2);
        ra += wk[k] * (std::abs(f1) + std::abs(f2));
        if (k % 2 == 1) rg += wg[k / 2] * (f1 + f2);
    }
    // QUADPACK rescaling of |K - G|
    cplx mean = 0.5 * rk;
    double asc = wk[7] * std::abs(fc - mean);
    for (int k = 0; k < 7; ++k) asc += wk[k] * (std::abs(fv[2 * k] - mean) + std::abs(fv[2 * k + 1] - mean));
    double err = std::abs((rk - rg) * h);
    asc *= std::abs(h);
    if (asc > 0.0 && err > 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {lo, hi, rk * h, err, 50.0 * 2.2e-16 * ra * std::abs(h)};
}

double target(const QuadratureSpec& q, cplx I) { return std::max(q.abs_tol, q.rel_tol * std::abs(I)); }

QuadResult adapt(const std::function<cplx(double)>& f, const std::vector<double>& cuts, const QuadratureSpec& q) {
    std::priority_queue<Panel> heap;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) heap.push(gk15(f, cuts[k], cuts[k + 1]));
    int panels = static_cast<int>(heap.size());
    const int budget = panels + q.max_panels;
    auto totals = [&]() {
        // heap copy keeps the sums order-independent of pushes
        std::vector<Panel> all;
        auto h = heap;
        while (!h.empty()) {
            all.push_back(h.top());
            h.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
        cplx v = 0.0;
        double e = 0.0, fl = 0.0;
        for (auto& p : all) {
            v += p.val;
            e += p.err;
            fl += p.floor;
        }
        return std::tuple<cplx, double, double>{v, e, fl};
    };
    auto [val, err, fsum] = totals();
    int since = 0;
    // below the summed roundoff floor further splitting cannot help
    while (err > std::max(target(q, val), fsum)) {
        if (panels >= budget)
        {
            char buf[160];
            std::snprintf(buf, sizeof buf, "quadrature did not converge within %d extra panels (error %.3g, target %.3g)",
                          q.max_panels, err, std::max(target(q, val), fsum));
            throw ConvergenceError(buf);
        }
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.lo + worst.hi);
        Panel a = gk15(f, worst.lo, mid), b = gk15(f, mid, worst.hi);
        val += a.val + b.val - worst.val;
        err += a.err + b.err - worst.err;
        fsum += a.floor + b.floor - worst.floor;
        heap.push(a);
        heap.push(b);
        ++panels;
        if (++since == 64) {
            std::tie(val, err, fsum) = totals();
            since = 0;
        }
    }
    std::tie(val, err, fsum) = totals();
    return {val, err, panels};
}

}  // namespace

QuadResult integrate_interval(const std::function<cplx(double)>& f, double lo, double hi, const QuadratureSpec& q) {
    std::vector<double> cuts(9);
    for (int k = 0; k <= 8; ++k) cuts[k] = lo + (hi - lo) * k / 8.0;
    return adapt(f, cuts, q);
}

QuadResult integrate_circle(const std::function<cplx(double)>& f, const QuadratureSpec& q, int oscillation) {
    q.validate();
    double d = q.endpoint_gap;
    // geometric grading towards both endpoints, uniform in between
    std::vector<double> left{d};
    for (double t = 1e-8; t < 0.05; t *= 10.0)
        if (t > d) left.push_back(t);
    left.push_back(0.05);
    int interior = std::max(16, 2 * std::abs(oscillation));
    std::vector<double> cuts = left;
    double a0 = 0.05, a1 = kTwoPi - 0.05;
    for (int k = 1; k < interior; ++k) cuts.push_back(a0 + (a1 - a0) * k / interior);
    for (auto it = left.rbegin(); it != left.rend(); ++it) cuts.push_back(kTwoPi - *it);

    QuadResult R = adapt(f, cuts, q);
    // shrink the gap until the endpoint slivers stop mattering
    for (int it = 0; it < 8; ++it) {
        double d2 = d / 10.0;
        Panel a = gk15(f, d2, d), b = gk15(f, kTwoPi - d, kTwoPi - d2);
        cplx add = a.val + b.val;
        R.value += add;
        R.error += a.err + b.err;
        R.panels += 2;
        d = d2;
        if (std::abs(add) <= target(q, R.value)) break;
    }
    return R;
}

LimitResult one_sided_limit(const std::function<cplx(double)>& f, Endpoint e, double tol) {
    // Neville extrapolation to theta = 0 on theta_k = h 4^-k
    constexpr int K = 8;
    const double h = 1e-2;
    std::array<double, K> t{};
    std::array<cplx, K> T{};
    cplx prev = 0.0, best = 0.0;
    double best_spread = 1e300;
    for (int k = 0; k < K; ++k) {
        t[k] = h * std::pow(0.25, k);
        T[k] = f(e == Endpoint::ZeroPlus ? t[k] : kTwoPi - t[k]);
        for (int j = k - 1; j >= 0; --j) T[j] = (t[j] * T[j + 1] - t[k] * T[j]) / (t[j] - t[k]);
        // T[0] is now the degree-k extrapolant
        if (k >= 2) {
            double spread = std::abs(T[0] - prev);
            if (spread < best_spread) {
                best_spread = spread;
                best = T[0];
            }
            if (spread <= tol * std::max(std::abs(T[0]), 1e-300) && k >= 3) break;
        }
        prev = T[0];
    }
    if (!(best_spread <= tol * std::max(std::abs(best), 1e-300)))
        throw ConvergenceError("one-sided limit did not settle (spread " + std::to_string(best_spread) + ")");
    return {best, best_spread};
}

}  // namespace dimer
