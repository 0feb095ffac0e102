#pragma once
#include <utility>
#include <vector>

#include "hexband/ode.hpp"
#include "hexband/potential.hpp"

namespace hexband {

/// Monodromy matrix entries of -u'' + q0 u = lambda u on [0,1] in the
/// c/s basis (c(0)=1, c'(0)=0; s(0)=0, s'(0)=1), plus the discriminant
/// D = c(1) + s'(1) and eta = D/2.
struct MonodromyData {
    double lambda = 0.0;
    double c1 = 1.0, c1p = 0.0, s1 = 0.0, s1p = 1.0;
    double discriminant = 2.0;
    double eta = 1.0;

    double det() const { return c1 * s1p - s1 * c1p; }
};

constexpr double kDefaultTol = 1e-10;

MonodromyData monodromy(const Potential& p, double lambda,
                        double tol = kDefaultTol);
double discriminant(const Potential& p, double lambda,
                    double tol = kDefaultTol);

struct Band {
    double lo = 0.0, hi = 0.0;
    bool clipped_lo = false, clipped_hi = false;
    /// Discriminant value at the lower edge (+2 or -2); D is monotone
    /// across the band towards the opposite value.
    double d_lo = 2.0;

    bool clipped() const { return clipped_lo || clipped_hi; }
};

struct Gap {
    double lo = 0.0, hi = 0.0;
    bool closed = false; // zero-length gap (double root of D = +-2)

    double length() const { return hi - lo; }
};

struct BandStructure {
    Potential potential = Potential::zero();
    double tol = kDefaultTol;
    double window_lo = 0.0, window_hi = 0.0;
    std::vector<Band> bands;
    std::vector<Gap> gaps;
    std::vector<double> dirichlet_eigenvalues;
    std::vector<double> periodic_eigenvalues;     // roots of D = +2
    std::vector<double> antiperiodic_eigenvalues; // roots of D = -2
};

/// Roots of s_lambda(1) = 0 in the window, sorted.
std::vector<double> dirichlet_spectrum(const Potential& p, double lambda_min,
                                       double lambda_max,
                                       double tol = kDefaultTol);

BandStructure band_structure(const Potential& p, double lambda_min,
                             double lambda_max, double tol = kDefaultTol);

/// The unique lambda in band k with D(lambda) = target, |target| <= 2.
/// The band must be fully inside the window.
double invert_discriminant_on_band(const BandStructure& bs, int band_index,
                                   double target, double tol = kDefaultTol);

} // namespace hexband
