#include "hexband/bloch.hpp"

#include <algorithm>

namespace hexband {

double bloch_factor(const Quasimomentum& theta) {
    double re = 1.0 + std::cos(theta.theta1) + std::cos(theta.theta2);
    double im = std::sin(theta.theta1) + std::sin(theta.theta2);
    return std::hypot(re, im);
}

double bloch_factor_modified(const Quasimomentum& theta) {
    double h = 0.5 * theta.theta2;
    double rad = 1.0 + 4.0 * std::cos(h) * (std::cos(h) + std::cos(theta.theta1 - h));
    return std::sqrt(std::max(0.0, rad));
}

} // namespace hexband
