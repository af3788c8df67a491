#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dimer/common.hpp"

namespace dimer {

// square complex band matrix, kl sub- and ku super-diagonals.
// LU with partial pivoting; fill-in widens the upper band to kl + ku
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    cplx& operator()(int r, int c);
    cplx operator()(int r, int c) const;

    // factor in place, then solve for every column of B
    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& B);

private:
    int n_, kl_, ku_, ld_;
    std::vector<cplx> a_;  // row r holds columns r-kl .. r+kl+ku
    std::vector<int> piv_;
    bool factored_ = false;

    cplx& at(int r, int c) { return a_[static_cast<std::size_t>(r) * ld_ + (c - r + kl_)]; }
    void factor();
};

}  // namespace dimer
