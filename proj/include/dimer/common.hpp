#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dimer {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// error kinds; the cli maps these onto exit codes
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct DegenerateError : Error {
    using Error::Error;
};
struct SingularError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct GuardError : Error {
    using Error::Error;
};

struct WeightParams {
    double a = 1.0;
    double b = 1.0;

    WeightParams() = default;
    WeightParams(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0))
            throw PreconditionError("weights must be positive");
    }
    bool strong_interface() const { return b - a > 2.0; }
};

enum class Spin { Up = 0, Down = 1 };

inline const char* spin_name(Spin s) { return s == Spin::Up ? "up" : "down"; }

// a point on (or near) the unit circle.  omega-1 is kept separately so that
// z2 = a(omega-1) stays accurate as theta -> 0
struct Phase {
    cplx omega;
    cplx omega_m1;

    static Phase from_theta(double theta) {
        Phase p;
        p.omega = std::polar(1.0, theta);
        // e^{it}-1 = 2i sin(t/2) e^{it/2}
        p.omega_m1 = cplx(0.0, 2.0 * std::sin(0.5 * theta)) * std::polar(1.0, 0.5 * theta);
        return p;
    }
    static Phase from_omega(cplx w) {
        if (w == cplx(0.0))
            throw PreconditionError("omega must be nonzero");
        return Phase{w, w - 1.0};
    }
    Phase conj() const { return Phase{std::conj(omega), std::conj(omega_m1)}; }
};

// integer power by squaring
inline cplx ipow(cplx z, long k) {
    if (k < 0) {
        z = 1.0 / z;
        k = -k;
    }
    cplx r(1.0, 0.0);
    while (k) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

}  // namespace dimer
