#include "hexband/ode.hpp"

#include <algorithm>
#include <cmath>

#include "hexband/errors.hpp"

namespace hexband {
namespace {

// C(w2,h) = cos(sqrt(w2) h) continued to w2 < 0 as cosh, and
// S(w2,h) = sin(sqrt(w2) h)/sqrt(w2) likewise.  Series near w2 h^2 = 0.
void cs_pair(double w2, double h, double& C, double& S) {
    double z = w2 * h * h;
    if (std::abs(z) < 1e-8) {
        C = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        S = h * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    } else if (w2 > 0.0) {
        double w = std::sqrt(w2);
        C = std::cos(w * h);
        S = std::sin(w * h) / w;
    } else {
        double k = std::sqrt(-w2);
        C = std::cosh(k * h);
        S = std::sinh(k * h) / k;
    }
}

struct State4 {
    // Columns of the fundamental matrix: (c, c', s, s').
    double y[4];
};

void rhs(const Potential& p, double lambda, double x, const State4& y, State4& dy) {
    // Clamp against end-of-interval rounding drift.
    double w = p(std::clamp(x, 0.0, 1.0)) - lambda;
    dy.y[0] = y.y[1];
    dy.y[1] = w * y.y[0];
    dy.y[2] = y.y[3];
    dy.y[3] = w * y.y[2];
}

void rk4_step(const Potential& p, double lambda, double x, double h, State4& y) {
    State4 k1, k2, k3, k4, t;
    rhs(p, lambda, x, y, k1);
    for (int i = 0; i < 4; ++i) t.y[i] = y.y[i] + 0.5 * h * k1.y[i];
    rhs(p, lambda, x + 0.5 * h, t, k2);
    for (int i = 0; i < 4; ++i) t.y[i] = y.y[i] + 0.5 * h * k2.y[i];
    rhs(p, lambda, x + 0.5 * h, t, k3);
    for (int i = 0; i < 4; ++i) t.y[i] = y.y[i] + h * k3.y[i];
    rhs(p, lambda, x + h, t, k4);
    for (int i = 0; i < 4; ++i)
        y.y[i] += h / 6.0 * (k1.y[i] + 2.0 * k2.y[i] + 2.0 * k3.y[i] + k4.y[i]);
}

Mat2 piecewise_transfer(const Potential& p, double lambda, double a, double b) {
    const auto& bp = p.breakpoints();
    const auto& vals = p.values();
    Mat2 m;
    double x = a;
    std::size_t i = 0;
    while (i < bp.size() && bp[i] <= a) ++i;
    for (; i < bp.size() && bp[i] < b; ++i) {
        m = constant_piece_transfer(vals[i], lambda, bp[i] - x) * m;
        x = bp[i];
    }
    m = constant_piece_transfer(vals[i], lambda, b - x) * m;
    return m;
}

Mat2 adaptive_rk4(const Potential& p, double lambda, double a, double b,
                  double tol) {
    State4 y{{1.0, 0.0, 0.0, 1.0}};
    double x = a;
    double h = std::min(0.05, (b - a) / 4.0);
    const double hmin = 1e-12;
    while (x < b) {
        h = std::min(h, b - x);
        // One step of h vs two steps of h/2, Richardson error estimate.
        State4 y1 = y, y2 = y;
        rk4_step(p, lambda, x, h, y1);
        rk4_step(p, lambda, x, 0.5 * h, y2);
        rk4_step(p, lambda, x + 0.5 * h, 0.5 * h, y2);
        double err = 0.0, scale = 1.0;
        for (int i = 0; i < 4; ++i) {
            err = std::max(err, std::abs(y2.y[i] - y1.y[i]) / 15.0);
            scale = std::max(scale, std::abs(y2.y[i]));
        }
        if (err <= tol * scale) {
            for (int i = 0; i < 4; ++i)
                y.y[i] = y2.y[i] + (y2.y[i] - y1.y[i]) / 15.0;
            x += h;
            double grow = (err > 0.0)
                ? 0.9 * std::pow(tol * scale / err, 0.2) : 2.0;
            h *= std::clamp(grow, 0.2, 2.0);
        } else {
            h *= std::clamp(0.9 * std::pow(tol * scale / err, 0.2), 0.1, 0.9);
            if (h < hmin)
                throw NumericError("monodromy integration: step underflow", lambda);
        }
    }
    return {y.y[0], y.y[2], y.y[1], y.y[3]};
}

} // namespace

Mat2 constant_piece_transfer(double q, double lambda, double h) {
    double w2 = lambda - q;
    double C, S;
    cs_pair(w2, h, C, S);
    return {C, S, -w2 * S, C};
}

Mat2 transfer_matrix(const Potential& p, double lambda, double a, double b,
                     double tol) {
    if (b <= a) return {};
    switch (p.kind()) {
    case PotentialKind::Zero:
        return constant_piece_transfer(0.0, lambda, b - a);
    case PotentialKind::PiecewiseConstant:
        return piecewise_transfer(p, lambda, a, b);
    default:
        return adaptive_rk4(p, lambda, a, b, tol);
    }
}

Mat2 transfer_matrix_fixed(const Potential& p, double lambda, double a,
                           double b, int steps) {
    State4 y{{1.0, 0.0, 0.0, 1.0}};
    double h = (b - a) / steps;
    for (int i = 0; i < steps; ++i)
        rk4_step(p, lambda, a + i * h, h, y);
    return {y.y[0], y.y[2], y.y[1], y.y[3]};
}

} // namespace hexband
