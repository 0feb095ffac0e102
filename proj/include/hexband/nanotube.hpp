#pragma once
#include <utility>
#include <vector>

#include "hexband/graphene.hpp"
#include "hexband/hill.hpp"

namespace hexband {

enum class TubeFamily { Zigzag, Armchair, Chiral };

struct TubeVector {
    int p1 = 0, p2 = 0;
    TubeFamily family = TubeFamily::Chiral;
    std::pair<int, int> normal_form{0, 0};
    bool metallic = false; // (p1 - p2) divisible by 3

    bool even_zigzag() const {
        return family == TubeFamily::Zigzag && normal_form.second % 2 == 0;
    }
};

/// Classify a translation vector up to the hexagonal symmetry group:
/// zig-zag tubes normalize to (0,N), armchair to (N,N), chiral to the
/// lexicographically smallest image with p1 >= p2 >= 0.
TubeVector classify(int p1, int p2);

struct QuasimomentumLine {
    int n; // constraint p1*theta1 + p2*theta2 = 2*pi*n
};

/// All lines of B_p = {theta : p . theta in 2 pi Z} meeting [-pi,pi]^2.
std::vector<QuasimomentumLine> quasimomentum_lines(const TubeVector& p);

struct AlphaDetail {
    double value = 0.0;      // alpha(p) = min F over B_p
    double minimized = 0.0;  // brute-force line minimization result
    int minimizing_n = 0;    // line attaining the minimum
    int predicted_n = 0;     // line the p1-p2 = 3m +- 1 rule predicts
    bool matches_prediction = true;
};

AlphaDetail alpha_detail(const TubeVector& p, double tol = 1e-10);
/// alpha(p): exact shortcuts (metallic -> 0, small zig-zag list -> 1,
/// zig-zag closed form) with line minimization as the generic fallback.
double alpha(const TubeVector& p, double tol = 1e-10);
/// Line minimization only, no shortcuts; cross-check oracle for alpha().
double alpha_minimized(const TubeVector& p, double tol = 1e-10);
/// Closed form |2 cos(pi m / N) - 1| for the (0,N) zig-zag tube.
double alpha_zigzag_formula(int N);

struct TubeGap {
    double lo = 0.0, hi = 0.0; // open interval inside a Hill band
    int band = 0;
};

struct TubeSpectrum {
    TubeVector tube;
    double alpha = 0.0;
    std::vector<std::pair<double, double>> ac_bands;
    std::vector<double> point_spectrum_dirichlet;
    std::vector<double> point_spectrum_xi; // empty unless even zig-zag
    std::vector<TubeGap> tube_gaps;
    BandStructure band_structure;
    bool has_clipped_bands = false;
};

TubeSpectrum tube_spectrum(const TubeVector& p, const Potential& q,
                           double lambda_min, double lambda_max,
                           double tol = kDefaultTol);

struct XiLevels {
    std::vector<double> levels;
    bool partial = false; // some bands clipped by the window
};

/// Roots of D = +-2/3 in the window, two per full band.
XiLevels xi_levels(const BandStructure& bs);

struct TubeDispersionResult {
    std::vector<DispersionPoint> points;
    bool clamped = false; // radicand clipped to 0 by rounding
};

/// 1D dispersion of the zig-zag tube T_(0,N) on line n: evaluates
/// |D| = (2/3) sqrt(1 + 4 cos(pi n/N)[cos(pi n/N) + cos(theta1 - pi n/N)])
/// and inverts it on every full band.
TubeDispersionResult zigzag_dispersion(int N, const BandStructure& bs, int n,
                                       double theta1);

/// 1D dispersion of the armchair tube T_(N,N) on line n.
TubeDispersionResult armchair_dispersion(int N, const BandStructure& bs, int n,
                                         double theta1);

} // namespace hexband
