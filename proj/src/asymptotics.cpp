#include "dimer/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dimer/format.hpp"
#include "dimer/parallel.hpp"

namespace dimer {

CorCase parse_cor_case(const std::string& s) {
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), ::tolower);
    if (t.size() == 4 && t.rfind("cor", 0) == 0 && t[3] >= '1' && t[3] <= '7')
        return static_cast<CorCase>(t[3] - '0');
    throw PreconditionError("unknown case '" + s + "' (expected cor1..cor7)");
}

std::string cor_name(CorCase c) { return "cor" + std::to_string(static_cast<int>(c)); }

namespace {

long scaled_index(double p, long N) {
    double x = p * static_cast<double>(N);
    long k = std::lround(x);
    if (std::abs(x - static_cast<double>(k)) > 1e-9)
        throw PreconditionError("p*N must be an integer");
    return k;
}

double gap_factor(const WeightParams& w) {
    double d = (w.a - w.b) * (w.a - w.b) - 4.0;
    if (!(d > 0.0)) throw PreconditionError("exponential regime needs |a-b| > 2");
    return std::sqrt(d) / (w.a + w.b);
}

double r1p_at_one(const WeightParams& w) { return root_pair(1, Phase::from_theta(0.0), w).r_plus.real(); }

cplx lim(const std::function<cplx(double)>& f, Endpoint e) { return one_sided_limit(f, e).value; }

std::function<cplx(double)> kernel_g(const AsymptoticCase& c, FarRegion reg) {
    return [=](double th) {
        Phase w = Phase::from_theta(th);
        return little_g(c.i, c.j, reg, c.n0, w, c.params) / gauge_factor(c.i, c.j, w);
    };
}

}  // namespace

void AsymptoticCase::check(long var) const {
    auto fail = [&](const std::string& why) { throw PreconditionError(cor_name(id) + ": " + why); };
    switch (id) {
        case CorCase::Cor1:
            if (var < 1) fail("m must be positive");
            break;
        case CorCase::Cor2:
            if (n0 > 0) fail("needs n0 <= 0 < n");
            if (var <= 0) fail("needs n > 0");
            break;
        case CorCase::Cor3:
            if (n0 <= 0) fail("needs n < 0 < n0");
            if (var >= 0) fail("needs n < 0");
            break;
        case CorCase::Cor4:
            if (n0 <= 0) fail("needs n > n0 > 0");
            if (var <= n0) fail("needs n > n0");
            break;
        case CorCase::Cor5:
            if (n0 > 0) fail("needs n < n0 <= 0");
            if (var >= n0) fail("needs n < n0");
            break;
        case CorCase::Cor6:
        case CorCase::Cor7:
            if (!(p > 1.0)) fail("needs p > 1");
            if (var < 1) fail("needs N >= 1");
            if (i != Spin::Up || j != Spin::Up) fail("only the (up, up) component has a closed form");
            scaled_index(p, var);
            break;
    }
    if (id == CorCase::Cor3 || id == CorCase::Cor5 || id == CorCase::Cor7) gap_factor(params);
}

void AsymptoticCase::entry_indices(long var, int& n0o, int& no, int& mo) const {
    n0o = n0;
    no = n;
    mo = m;
    switch (id) {
        case CorCase::Cor1: mo = static_cast<int>(var); break;
        case CorCase::Cor6:
            n0o = static_cast<int>(var);
            no = static_cast<int>(scaled_index(p, var));
            break;
        case CorCase::Cor7:
            n0o = -static_cast<int>(var);
            no = -static_cast<int>(scaled_index(p, var));
            break;
        default: no = static_cast<int>(var); break;
    }
}

double leading_term(const AsymptoticCase& c, long var) {
    c.check(var);
    const WeightParams& w = c.params;
    const double dv = static_cast<double>(var);
    switch (c.id) {
        case CorCase::Cor1: {
            auto f = [&](double th) { return kernel_eval(c.i, c.j, c.n, c.n0, Phase::from_theta(th), w); };
            return -lim(f, Endpoint::ZeroPlus).imag() / (kPi * dv);
        }
        case CorCase::Cor2:
        case CorCase::Cor4: {
            auto g = kernel_g(c, FarRegion::RightFar);
            cplx s = lim(g, Endpoint::ZeroPlus) + lim(g, Endpoint::TwoPiMinus);
            return s.real() / (kTwoPi * w.a * dv);
        }
        case CorCase::Cor3:
        case CorCase::Cor5: {
            auto g = kernel_g(c, FarRegion::LeftFar);
            double A = gap_factor(w);
            return lim(g, Endpoint::ZeroPlus).imag() / kPi * A / dv * std::pow(r1p_at_one(w), dv);
        }
        case CorCase::Cor6: {
            auto part = [&](int which) {
                return [=](double th) {
                    Phase ph = Phase::from_theta(th);
                    auto s = interface_coeff_split(ph, w);
                    return (which == 1 ? s.c41 : s.c42) * z_side(2, ph, w);
                };
            };
            cplx s1 = lim(part(1), Endpoint::ZeroPlus) + lim(part(1), Endpoint::TwoPiMinus);
            cplx s2 = lim(part(2), Endpoint::ZeroPlus) + lim(part(2), Endpoint::TwoPiMinus);
            return (s1 / (c.p - 1.0) + s2 / (c.p + 1.0)).real() / (kTwoPi * w.a * dv);
        }
        case CorCase::Cor7: {
            auto f = [&](double th) {
                Phase ph = Phase::from_theta(th);
                return interface_coeff_split(ph, w).c1p2 * z_side(1, ph, w);
            };
            double A = gap_factor(w);
            long k = scaled_index(c.p, var) + var;
            double rk = std::pow(r1p_at_one(w), -static_cast<double>(k));
            return -lim(f, Endpoint::ZeroPlus).imag() / kPi * A / static_cast<double>(k) * rk;
        }
    }
    return 0.0;
}

double cor7_split_integral(const AsymptoticCase& c, long N, const QuadratureSpec& q) {
    c.check(N);
    long k = scaled_index(c.p, N) + N;
    auto f = [&](double th) {
        Phase ph = Phase::from_theta(th);
        auto r1 = root_pair(1, ph, c.params);
        cplx v = interface_coeff_split(ph, c.params).c1p2 * z_side(1, ph, c.params) / ph.omega;
        return v * ipow(r1.r_plus, -k) * std::polar(1.0, th * c.m);
    };
    return integrate_circle(f, q, c.m).value.real() / kTwoPi;
}

double quadrature_value(const AsymptoticCase& c, long var, const QuadratureSpec& q) {
    c.check(var);
    if (c.id == CorCase::Cor7) return cor7_split_integral(c, var, q);
    int n0, n, m;
    c.entry_indices(var, n0, n, m);
    return invk_entry(c.i, c.j, n0, n, m, c.params, q).value;
}

ProbeTable ratio_probe(const AsymptoticCase& c, const std::vector<long>& schedule, const QuadratureSpec& q) {
    if (schedule.empty()) throw PreconditionError("empty schedule");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        if (std::abs(schedule[k]) <= std::abs(schedule[k - 1]))
            throw PreconditionError("schedule must grow in magnitude");
    for (long v : schedule) c.check(v);
    ProbeTable T;
    T.rows.resize(schedule.size());
    parallel_for(static_cast<int>(schedule.size()), [&](int k) {
        long v = schedule[k];
        double lt = leading_term(c, v);
        QuadratureSpec qq = q;
        // the entry may be exponentially small; keep the tolerance relative to it
        qq.abs_tol = std::min(q.abs_tol, std::max(1e-8 * std::abs(lt), 1e-300));
        qq.rel_tol = std::min(q.rel_tol, 1e-8);
        double qv = quadrature_value(c, v, qq);
        T.rows[k] = {v, lt, qv, qv / lt};
    });
    // least squares slope of log|ratio-1| against log|var|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& r : T.rows) {
        double e = std::abs(r.ratio - 1.0);
        if (!(e > 0.0) || !std::isfinite(e)) continue;
        double x = std::log(std::abs(static_cast<double>(r.var))), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    T.error_exponent = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : std::nan("");
    return T;
}

void write_probe_csv(std::ostream& os, const ProbeTable& t) {
    os << "var,asymptotic,quadrature,ratio\n";
    for (const auto& r : t.rows)
        os << r.var << ',' << fmt17(r.asymptotic) << ',' << fmt17(r.quadrature) << ',' << fmt17(r.ratio) << '\n';
}

}  // namespace dimer
