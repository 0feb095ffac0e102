#pragma once
#include <vector>

#include "hexband/bloch.hpp"
#include "hexband/hill.hpp"
#include "hexband/kernels.hpp"

namespace hexband {

struct DispersionPoint {
    int band = 0;
    int sign = +1; // branch: D = sign * (2/3) F(theta)
    double lambda = 0.0;
};

/// Both dispersion branches D(lambda) = +-(2/3) F(theta) for every band
/// fully inside the window, via monotone inversion of the discriminant.
std::vector<DispersionPoint> dispersion_lambda(const BandStructure& bs,
                                               const Quasimomentum& theta);

struct SurfacePoint {
    double theta1 = 0.0, theta2 = 0.0;
    int band = 0;
    int sign = +1;
    double lambda = 0.0;
};

/// Tabulated dispersion over an n x n Brillouin grid, row-major in theta2
/// with theta1 fastest.  Grid points are independent; Exec::Parallel runs
/// them across OpenMP threads with identical output ordering.
std::vector<SurfacePoint> dispersion_surface(const BandStructure& bs, int n,
                                             const std::vector<int>& bands,
                                             Exec exec = Exec::Parallel);

struct GrapheneSpectrum {
    std::vector<std::pair<double, double>> ac_bands; // = Hill bands
    std::vector<double> point_spectrum;              // Dirichlet eigenvalues
    std::vector<double> dirac_levels;                // D = 0, one per full band
    BandStructure band_structure;
};

GrapheneSpectrum graphene_spectrum(const Potential& p, double lambda_min,
                                   double lambda_max, double tol = kDefaultTol);

struct DiracCone {
    double lambda_star = 0.0;
    double slope = 0.0;      // mean |dlambda/d|theta|| over the sampled rays
    double anisotropy = 0.0; // relative spread across rays
    bool anisotropy_warning = false; // spread above 5 percent
    bool anomalous = false;          // degenerate (near-zero) slope
    // Signed per-ray finite-difference slopes of the two branches.
    double slope_plus[4] = {0, 0, 0, 0};
    double slope_minus[4] = {0, 0, 0, 0};
};

/// Cone vertex in the given band and finite-difference slope estimate along
/// four rays from the Dirac point theta_K = (2*pi/3, -2*pi/3).
DiracCone dirac_cone_slopes(const BandStructure& bs, int band_index,
                            double tol = 1e-10);

/// Checks that every dispersion lambda at theta satisfies
/// eta(lambda) in {+-F(theta)/3}, the spectrum of the 2x2 Bloch Laplacian.
bool bloch_laplacian_check(const BandStructure& bs, const Quasimomentum& theta,
                           double tol);

} // namespace hexband
