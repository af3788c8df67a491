#include "dimer/spectral.hpp"

#include <algorithm>
#include <ostream>

#include "dimer/format.hpp"

namespace dimer {

std::pair<cplx, cplx> z_funcs(const Phase& w, const WeightParams& p) {
    // a w - b written as a(w-1) + (a-b) so that a = b keeps full accuracy near w = 1
    cplx z2 = p.a * w.omega_m1;
    cplx z1 = z2 + (p.a - p.b);
    return {z1, z2};
}

cplx z_side(int i, const Phase& w, const WeightParams& p) {
    auto [z1, z2] = z_funcs(w, p);
    return i == 1 ? z1 : z2;
}

Mat2 transfer_matrix(Side side, const Phase& w, const WeightParams& p) {
    cplx z = z_side(static_cast<int>(side), w, p);
    cplx zw = z / w.omega;
    Mat2 M;
    M << 1.0, zw, -z, 1.0 - z * zw;
    return M;
}

RootPair root_pair(int i, const Phase& w, const WeightParams& p) {
    if (i != 1 && i != 2) throw PreconditionError("side index must be 1 or 2");
    cplx z = z_side(i, w, p);
    RootPair rp;
    if (z == cplx(0.0)) {
        rp.r_plus = rp.r_minus = 1.0;
        rp.u_plus = rp.u_minus = 0.0;
        rp.degenerate = true;
        return rp;
    }
    // r = 1 + u with u^2 + q u + q = 0
    cplx q = z * z / w.omega;
    cplx s = std::sqrt(q * (q - 4.0));
    cplx ua = -0.5 * (q + s), ub = -0.5 * (q - s);
    cplx big = std::abs(ua) >= std::abs(ub) ? ua : ub;
    cplx small = q / big;
    cplx ra = 1.0 + big, rb = 1.0 + small;
    if (std::abs(ra) >= std::abs(rb)) {
        rp.u_plus = big;
        rp.u_minus = small;
    } else {
        rp.u_plus = small;
        rp.u_minus = big;
    }
    rp.r_plus = 1.0 + rp.u_plus;
    rp.r_minus = 1.0 / rp.r_plus;
    return rp;
}

std::pair<cplx, cplx> roots(int i, cplx omega, const WeightParams& p) {
    auto rp = root_pair(i, Phase::from_omega(omega), p);
    return {rp.r_plus, rp.r_minus};
}

EigVec eigvec(int i, Branch br, const Phase& w, const WeightParams& p) {
    cplx z = z_side(i, w, p);
    auto rp = root_pair(i, w, p);
    EigVec e;
    e.v << z / w.omega, (br == Branch::Plus ? rp.u_plus : rp.u_minus);
    e.degenerate = rp.degenerate;
    return e;
}

SpectralData spectral_data(const Phase& w, const WeightParams& p) {
    SpectralData d;
    d.omega = w.omega;
    std::tie(d.z1, d.z2) = z_funcs(w, p);
    auto r1 = root_pair(1, w, p), r2 = root_pair(2, w, p);
    d.r1_plus = r1.r_plus;
    d.r1_minus = r1.r_minus;
    d.r2_plus = r2.r_plus;
    d.r2_minus = r2.r_minus;
    d.v1_plus = eigvec(1, Branch::Plus, w, p).v;
    d.v1_minus = eigvec(1, Branch::Minus, w, p).v;
    d.v2_plus = eigvec(2, Branch::Plus, w, p).v;
    d.v2_minus = eigvec(2, Branch::Minus, w, p).v;
    return d;
}

cplx spectral_curve(cplx z, cplx omega, const WeightParams& p) {
    if (z == cplx(0.0) || omega == cplx(0.0)) throw PreconditionError("z and omega must be nonzero");
    return -2.0 - 2.0 * p.a * p.b + p.b * p.b / omega + p.a * p.a * omega + 1.0 / z + z;
}

bool is_critical(const WeightParams& p) { return std::abs(p.a - p.b) < 2.0; }

TorusSearch torus_root_search(const WeightParams& p, int resolution) {
    if (resolution < 2) throw PreconditionError("resolution must be >= 2");
    // p(z,w) = 0  <=>  z^2 + c(w) z + 1 = 0; roots come in pairs z, 1/z
    TorusSearch out;
    out.min_log_modulus = 1e300;
    for (int k = 0; k < resolution; ++k) {
        cplx w = std::polar(1.0, kTwoPi * k / resolution);
        cplx c = -2.0 - 2.0 * p.a * p.b + p.b * p.b / w + p.a * p.a * w;
        cplx s = std::sqrt(c * c - 4.0);
        cplx za = 0.5 * (-c + s), zb = 0.5 * (-c - s);
        cplx zbig = std::abs(za) >= std::abs(zb) ? za : zb;
        out.min_log_modulus = std::min(out.min_log_modulus, std::log(std::abs(zbig)));
    }
    // a root within one z-grid cell of the unit circle counts
    out.has_root = out.min_log_modulus <= kTwoPi / resolution;
    return out;
}

std::vector<RootNormRow> root_norm_profile(const WeightParams& p, int samples) {
    if (samples < 2) throw PreconditionError("samples must be >= 2");
    std::vector<RootNormRow> rows(samples);
    for (int k = 0; k < samples; ++k) {
        double th = kTwoPi * k / samples;
        Phase w = Phase::from_theta(th);
        auto r1 = root_pair(1, w, p), r2 = root_pair(2, w, p);
        rows[k] = {th, std::abs(r1.r_plus), std::abs(r1.r_minus), std::abs(r2.r_plus),
                   std::abs(r2.r_minus)};
    }
    return rows;
}

void write_root_profile_csv(std::ostream& os, const std::vector<RootNormRow>& rows) {
    os << "theta,r1p,r1m,r2p,r2m\n";
    for (const auto& r : rows)
        os << fmt17(r.theta) << ',' << fmt17(r.r1p) << ',' << fmt17(r.r1m) << ',' << fmt17(r.r2p)
           << ',' << fmt17(r.r2m) << '\n';
}

}  // namespace dimer
