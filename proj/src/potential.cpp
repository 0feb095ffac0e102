#include "hexband/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hexband {

Potential Potential::zero() {
    Potential p;
    p.kind_ = PotentialKind::Zero;
    return p;
}

Potential Potential::cosine(double amplitude, int harmonics) {
    if (harmonics < 1)
        throw std::invalid_argument("cosine potential: harmonics must be >= 1");
    Potential p;
    p.kind_ = PotentialKind::Cosine;
    p.amplitude_ = amplitude;
    p.harmonics_ = harmonics;
    return p;
}

Potential Potential::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty())
        throw std::invalid_argument("polynomial potential: empty coefficient list");
    Potential p;
    p.kind_ = PotentialKind::Polynomial;
    p.coefficients_ = std::move(coefficients);
    return p;
}

Potential Potential::piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument(
            "piecewise potential: need one more value than breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= 0.0 || breakpoints[i] >= 1.0)
            throw std::invalid_argument("piecewise potential: breakpoints must lie in (0,1)");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw std::invalid_argument("piecewise potential: breakpoints must be increasing");
    }
    Potential p;
    p.kind_ = PotentialKind::PiecewiseConstant;
    p.breakpoints_ = std::move(breakpoints);
    p.values_ = std::move(values);
    return p;
}

Potential Potential::tabulated(std::vector<double> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("tabulated potential: need at least 2 samples");
    Potential p;
    p.kind_ = PotentialKind::Tabulated;
    p.samples_ = std::move(samples);
    p.symmetry_tolerance_ = 1e-9;
    return p;
}

double Potential::operator()(double x) const {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("potential evaluated outside [0,1]");
    switch (kind_) {
    case PotentialKind::Zero:
        return 0.0;
    case PotentialKind::Cosine:
        return amplitude_ * std::cos(2.0 * M_PI * harmonics_ * x);
    case PotentialKind::Polynomial: {
        double v = 0.0;
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
            v = v * x + *it;
        return v;
    }
    case PotentialKind::PiecewiseConstant: {
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
    }
    case PotentialKind::Tabulated: {
        const auto n = samples_.size();
        double t = x * static_cast<double>(n - 1);
        auto i = static_cast<std::size_t>(t);
        if (i >= n - 1) return samples_.back();
        double frac = t - static_cast<double>(i);
        return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
    }
    }
    return 0.0;
}

double Potential::periodic(double x) const {
    double frac = x - std::floor(x);
    return (*this)(frac);
}

double Potential::grid_min() const {
    double m = (*this)(0.0);
    for (int i = 1; i <= 1024; ++i)
        m = std::min(m, (*this)(static_cast<double>(i) / 1024.0));
    return m;
}

std::string Potential::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case PotentialKind::Zero: os << "zero"; break;
    case PotentialKind::Cosine:
        os << "cosine(A=" << amplitude_ << ", k=" << harmonics_ << ")";
        break;
    case PotentialKind::Polynomial:
        os << "polynomial(" << coefficients_.size() << " coefficients)";
        break;
    case PotentialKind::PiecewiseConstant:
        os << "piecewise-constant(" << values_.size() << " pieces)";
        break;
    case PotentialKind::Tabulated:
        os << "tabulated(" << samples_.size() << " samples)";
        break;
    }
    return os.str();
}

EvennessReport validate_evenness(const Potential& p, int grid_size) {
    if (grid_size < 2)
        throw std::invalid_argument("validate_evenness: grid_size must be >= 2");
    double worst = 0.0;
    // Midpoint grid: jump discontinuities of piecewise potentials are a null
    // set and must not fail an otherwise symmetric profile.
    for (int i = 0; i < grid_size; ++i) {
        double x = (static_cast<double>(i) + 0.5) / grid_size;
        worst = std::max(worst, std::abs(p(x) - p(1.0 - x)));
    }
    EvennessReport r;
    r.max_violation = worst;
    r.ok = worst <= p.symmetry_tolerance();
    return r;
}

} // namespace hexband
