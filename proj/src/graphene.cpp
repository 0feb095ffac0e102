#include "hexband/graphene.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hexband/errors.hpp"

namespace hexband {

std::vector<DispersionPoint> dispersion_lambda(const BandStructure& bs,
                                               const Quasimomentum& theta) {
    double f = bloch_factor(theta);
    std::vector<DispersionPoint> out;
    for (int k = 0; k < static_cast<int>(bs.bands.size()); ++k) {
        if (bs.bands[static_cast<std::size_t>(k)].clipped()) continue;
        for (int s : {+1, -1}) {
            DispersionPoint pt;
            pt.band = k;
            pt.sign = s;
            pt.lambda = invert_discriminant_on_band(bs, k, s * (2.0 / 3.0) * f,
                                                    bs.tol);
            out.push_back(pt);
        }
    }
    return out;
}

std::vector<SurfacePoint> dispersion_surface(const BandStructure& bs, int n,
                                             const std::vector<int>& bands,
                                             Exec exec) {
    if (n < 2)
        throw std::invalid_argument("dispersion_surface: grid size must be >= 2");
    for (int k : bands) {
        if (k < 0 || k >= static_cast<int>(bs.bands.size()))
            throw std::domain_error("dispersion_surface: no such band");
        if (bs.bands[static_cast<std::size_t>(k)].clipped())
            throw NumericError("dispersion_surface: band clipped by the window",
                               bs.bands[static_cast<std::size_t>(k)].lo);
    }
    const long total = static_cast<long>(n) * n;
    const auto nb = bands.size();
    std::vector<SurfacePoint> out(static_cast<std::size_t>(total) * nb * 2);

    auto fill_point = [&](long g) {
        int i2 = static_cast<int>(g / n); // theta2 index (slow)
        int i1 = static_cast<int>(g % n); // theta1 index (fast)
        double t1 = -M_PI + 2.0 * M_PI * i1 / (n - 1);
        double t2 = -M_PI + 2.0 * M_PI * i2 / (n - 1);
        Quasimomentum th(t1, t2);
        auto pts = std::size_t(g) * nb * 2;
        std::size_t j = 0;
        for (int k : bands) {
            for (int s : {+1, -1}) {
                SurfacePoint& sp = out[pts + j++];
                sp.theta1 = t1;
                sp.theta2 = t2;
                sp.band = k;
                sp.sign = s;
                sp.lambda = invert_discriminant_on_band(
                    bs, k, s * (2.0 / 3.0) * bloch_factor(th), bs.tol);
            }
        }
    };

    if (exec == Exec::Serial) {
        for (long g = 0; g < total; ++g) fill_point(g);
    } else {
        std::optional<std::pair<std::string, double>> failure;
#pragma omp parallel for schedule(dynamic, 8)
        for (long g = 0; g < total; ++g) {
            try {
                fill_point(g);
            } catch (const NumericError& e) {
#pragma omp critical
                if (!failure) failure = {e.what(), e.lambda()};
            }
        }
        if (failure) throw NumericError(failure->first, failure->second);
    }
    return out;
}

GrapheneSpectrum graphene_spectrum(const Potential& p, double lambda_min,
                                   double lambda_max, double tol) {
    GrapheneSpectrum gs;
    gs.band_structure = band_structure(p, lambda_min, lambda_max, tol);
    for (const auto& b : gs.band_structure.bands)
        gs.ac_bands.emplace_back(b.lo, b.hi);
    gs.point_spectrum = gs.band_structure.dirichlet_eigenvalues;
    for (int k = 0; k < static_cast<int>(gs.band_structure.bands.size()); ++k)
        if (!gs.band_structure.bands[static_cast<std::size_t>(k)].clipped())
            gs.dirac_levels.push_back(
                invert_discriminant_on_band(gs.band_structure, k, 0.0, tol));
    return gs;
}

DiracCone dirac_cone_slopes(const BandStructure& bs, int band_index,
                            double tol) {
    DiracCone cone;
    cone.lambda_star = invert_discriminant_on_band(bs, band_index, 0.0, bs.tol);

    const double t1k = 2.0 * M_PI / 3.0, t2k = -2.0 * M_PI / 3.0;
    const double step = 1e-3;
    double slopes[4];
    for (int r = 0; r < 4; ++r) {
        double a = M_PI * r / 4.0;
        Quasimomentum th(t1k + step * std::cos(a), t2k + step * std::sin(a));
        double f = bloch_factor(th);
        double lp = invert_discriminant_on_band(bs, band_index,
                                                (2.0 / 3.0) * f, bs.tol);
        double lm = invert_discriminant_on_band(bs, band_index,
                                                -(2.0 / 3.0) * f, bs.tol);
        cone.slope_plus[r] = (lp - cone.lambda_star) / step;
        cone.slope_minus[r] = (lm - cone.lambda_star) / step;
        // Cone symmetry: the two branches move by the same amount in
        // opposite directions; average their spread.
        slopes[r] = 0.5 * std::abs(lp - lm) / step;
    }
    double mean = 0.0, lo = slopes[0], hi = slopes[0];
    for (double s : slopes) {
        mean += s / 4.0;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    cone.slope = mean;
    cone.anisotropy = (mean > 0.0) ? (hi - lo) / mean : 0.0;
    cone.anisotropy_warning = cone.anisotropy > 0.05;
    cone.anomalous = mean < tol;
    return cone;
}

bool bloch_laplacian_check(const BandStructure& bs, const Quasimomentum& theta,
                           double tol) {
    double f3 = bloch_factor(theta) / 3.0; // eigenvalues of Delta^theta: +-F/3
    for (const auto& pt : dispersion_lambda(bs, theta)) {
        double eta = monodromy(bs.potential, pt.lambda, bs.tol).eta;
        double mis = std::min(std::abs(eta - f3), std::abs(eta + f3));
        if (mis > tol) return false;
    }
    return true;
}

} // namespace hexband
