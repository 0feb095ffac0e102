#pragma once
#include "hexband/potential.hpp"

namespace hexband {

/// 2x2 real matrix acting on (u, u') state vectors.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    double det() const { return a11 * a22 - a12 * a21; }
    double trace() const { return a11 + a22; }
};

/// Transfer matrix of -u'' + q u = lambda u over a piece of length h with
/// constant q.  Exact, with series fallback near omega = 0.
Mat2 constant_piece_transfer(double q, double lambda, double h);

/// Transfer matrix from x=a to x=b (0 <= a <= b <= 1).  Exact for
/// zero/piecewise-constant potentials; adaptive RK4 with step-halving error
/// control otherwise.  tol bounds the local error per step.
Mat2 transfer_matrix(const Potential& p, double lambda, double a, double b,
                     double tol);

/// Fixed-step RK4 transfer over [a,b] with the given number of steps.
/// Kept for order verification and as a serial reference path.
Mat2 transfer_matrix_fixed(const Potential& p, double lambda, double a,
                           double b, int steps);

} // namespace hexband
