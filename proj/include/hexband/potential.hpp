#pragma once
#include <string>
#include <vector>

namespace hexband {

enum class PotentialKind { Zero, Cosine, Polynomial, PiecewiseConstant, Tabulated };

/// Even potential q0 on the unit edge [0,1].  Values are immutable after
/// construction; evaluation is safe from any number of concurrent readers.
class Potential {
public:
    static Potential zero();
    /// amplitude * cos(2*pi*harmonics*x), automatically even about 1/2.
    static Potential cosine(double amplitude, int harmonics);
    static Potential polynomial(std::vector<double> coefficients);
    /// breakpoints strictly increasing inside (0,1); values has one more entry.
    static Potential piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values);
    /// Uniformly spaced samples on [0,1], linear interpolation in between.
    static Potential tabulated(std::vector<double> samples);

    /// q0(x) for x in [0,1]; throws std::domain_error outside.
    double operator()(double x) const;
    /// Periodized q(x) = q0(x mod 1) for any real x.
    double periodic(double x) const;

    PotentialKind kind() const { return kind_; }
    double symmetry_tolerance() const { return symmetry_tolerance_; }
    void set_symmetry_tolerance(double t) { symmetry_tolerance_ = t; }

    double amplitude() const { return amplitude_; }
    int harmonics() const { return harmonics_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& samples() const { return samples_; }

    /// Minimum of q0 over a 1024-point grid (used for scan lower bounds).
    double grid_min() const;

    std::string describe() const;

private:
    Potential() = default;

    PotentialKind kind_ = PotentialKind::Zero;
    double symmetry_tolerance_ = 1e-12;
    double amplitude_ = 0.0;
    int harmonics_ = 1;
    std::vector<double> coefficients_;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<double> samples_;
};

struct EvennessReport {
    bool ok = false;
    double max_violation = 0.0;
};

/// Max of |q0(x) - q0(1-x)| over a uniform grid, compared against the
/// potential's symmetry tolerance.
EvennessReport validate_evenness(const Potential& p, int grid_size);

} // namespace hexband
