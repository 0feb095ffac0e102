#pragma once
#include <cmath>

namespace hexband {

/// Quasimomentum in the Brillouin zone [-pi,pi]^2; components are reduced
/// modulo 2*pi on construction.
struct Quasimomentum {
    double theta1 = 0.0, theta2 = 0.0;

    Quasimomentum() = default;
    Quasimomentum(double t1, double t2) : theta1(reduce(t1)), theta2(reduce(t2)) {}

    static double reduce(double t) {
        t = std::remainder(t, 2.0 * M_PI);
        return t;
    }
};

/// F(theta) = |1 + e^{i theta1} + e^{i theta2}|, range [0,3].  Computed via
/// the complex modulus so the value stays exact near the minimum, where the
/// radical form can go negative from rounding.
double bloch_factor(const Quasimomentum& theta);

/// Alternate algebraic form sqrt(1 + 4 cos(t2/2) [cos(t2/2) + cos(t1 - t2/2)]);
/// equal to bloch_factor up to rounding.
double bloch_factor_modified(const Quasimomentum& theta);

} // namespace hexband
