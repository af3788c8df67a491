#include "dimer/banded.hpp"

#include <cmath>

namespace dimer {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), a_(static_cast<std::size_t>(n) * (2 * kl + ku + 1)), piv_(n) {
    if (n <= 0 || kl < 0 || ku < 0) throw PreconditionError("bad band dimensions");
}

cplx& BandedMatrix::operator()(int r, int c) {
    if (c < r - kl_ || c > r + ku_) throw PreconditionError("entry outside band");
    return at(r, c);
}

cplx BandedMatrix::operator()(int r, int c) const {
    if (c < r - kl_ || c > r + kl_ + ku_) return 0.0;
    return a_[static_cast<std::size_t>(r) * ld_ + (c - r + kl_)];
}

void BandedMatrix::factor() {
    const int uw = kl_ + ku_;  // upper width after pivoting
    for (int k = 0; k < n_; ++k) {
        int last = std::min(n_ - 1, k + kl_);
        int p = k;
        double best = std::abs(at(k, k));
        for (int r = k + 1; r <= last; ++r)
            if (std::abs(at(r, k)) > best) {
                best = std::abs(at(r, k));
                p = r;
            }
        if (!(best > 0.0)) throw SingularError("banded matrix is singular at pivot " + std::to_string(k));
        piv_[k] = p;
        int cmax = std::min(n_ - 1, k + uw);
        if (p != k)
            for (int c = k; c <= cmax; ++c) std::swap(at(k, c), at(p, c));
        cplx inv = 1.0 / at(k, k);
        for (int r = k + 1; r <= last; ++r) {
            cplx l = at(r, k) * inv;
            at(r, k) = l;
            if (l == cplx(0.0)) continue;
            for (int c = k + 1; c <= cmax; ++c) at(r, c) -= l * at(k, c);
        }
    }
    factored_ = true;
}

Eigen::MatrixXcd BandedMatrix::solve(const Eigen::MatrixXcd& B) {
    if (B.rows() != n_) throw PreconditionError("rhs size mismatch");
    if (!factored_) factor();
    const int uw = kl_ + ku_;
    Eigen::MatrixXcd X = B;
    for (int k = 0; k < n_; ++k) {
        if (piv_[k] != k) X.row(k).swap(X.row(piv_[k]));
        int last = std::min(n_ - 1, k + kl_);
        for (int r = k + 1; r <= last; ++r) X.row(r) -= at(r, k) * X.row(k);
    }
    for (int k = n_ - 1; k >= 0; --k) {
        int cmax = std::min(n_ - 1, k + uw);
        for (int c = k + 1; c <= cmax; ++c) X.row(k) -= at(k, c) * X.row(c);
        X.row(k) /= at(k, k);
    }
    return X;
}

}  // namespace dimer
