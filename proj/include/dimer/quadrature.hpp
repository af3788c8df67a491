#pragma once

#include <functional>

#include "dimer/common.hpp"

namespace dimer {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;  // stop when err <= max(abs_tol, rel_tol |I|)
    int max_panels = 4096;
    double endpoint_gap = 1e-9;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) throw PreconditionError("tolerances must be positive");
        if (!(endpoint_gap > 0.0) || !(endpoint_gap < 1e-3))
            throw PreconditionError("endpoint_gap must lie in (0, 1e-3)");
        if (max_panels < 8) throw PreconditionError("max_panels too small");
    }
};

struct QuadResult {
    cplx value;
    double error = 0.0;
    int panels = 0;
};

// integral of f over the open interval (0, 2pi); f may jump at the endpoints.
// oscillation is a hint (e.g. |m|) for the initial panel count
QuadResult integrate_circle(const std::function<cplx(double)>& f, const QuadratureSpec& q, int oscillation = 0);

// plain adaptive integral on [lo, hi]
QuadResult integrate_interval(const std::function<cplx(double)>& f, double lo, double hi, const QuadratureSpec& q);

enum class Endpoint { ZeroPlus, TwoPiMinus };

struct LimitResult {
    cplx value;
    double spread = 0.0;  // last two extrapolants
};

// one-sided limit of f(theta) at 0+ or 2pi- by polynomial extrapolation in theta
LimitResult one_sided_limit(const std::function<cplx(double)>& f, Endpoint e, double tol = 1e-6);

}  // namespace dimer
