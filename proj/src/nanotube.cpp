#include "hexband/nanotube.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hexband/errors.hpp"
#include "hexband/rootfind.hpp"

namespace hexband {
namespace {

// 60-degree lattice rotation in the (e1, e2) basis.
std::pair<int, int> rot60(std::pair<int, int> p) {
    return {-p.second, p.first + p.second};
}

std::array<std::pair<int, int>, 12> symmetry_images(int p1, int p2) {
    std::array<std::pair<int, int>, 12> out;
    std::pair<int, int> p{p1, p2};
    for (int k = 0; k < 6; ++k) {
        out[static_cast<std::size_t>(2 * k)] = p;
        out[static_cast<std::size_t>(2 * k + 1)] = {p.second, p.first};
        p = rot60(p);
    }
    return out;
}

double line_min_f2(int p1, int p2, int n, double theta_tol) {
    // Minimize F^2 along p1*t1 + p2*t2 = 2*pi*n inside the Brillouin zone.
    // Parametrize by the variable with the smaller coefficient so the
    // dependent coordinate varies slowly.
    bool swap = std::abs(p1) > std::abs(p2);
    double a = swap ? p2 : p1; // coefficient of the free variable
    double b = swap ? p1 : p2; // coefficient of the dependent variable (|b| >= |a|)
    double rhs = 2.0 * M_PI * n;

    auto f2 = [&](double t_free) {
        double t_dep = (rhs - a * t_free) / b;
        Quasimomentum th = swap ? Quasimomentum(t_dep, t_free)
                                : Quasimomentum(t_free, t_dep);
        double f = bloch_factor(th);
        return f * f;
    };

    // Free-variable range keeping the dependent coordinate inside [-pi,pi].
    double lo = -M_PI, hi = M_PI;
    if (a != 0.0) {
        double t1 = (rhs - b * M_PI) / a;
        double t2 = (rhs + b * M_PI) / a;
        lo = std::max(lo, std::min(t1, t2));
        hi = std::min(hi, std::max(t1, t2));
    } else {
        double dep = rhs / b;
        if (std::abs(dep) > M_PI + 1e-12) return 9.0; // line misses the zone
    }
    if (lo > hi) return 9.0;

    double best = 9.0;
    const int starts = 8;
    for (int s = 0; s < starts; ++s) {
        double sa = lo + (hi - lo) * s / starts;
        double sb = lo + (hi - lo) * (s + 1) / starts;
        auto [x, v] = golden_min(f2, sa, sb, theta_tol);
        (void)x;
        best = std::min(best, v);
    }
    return best;
}

} // namespace

TubeVector classify(int p1, int p2) {
    if (p1 == 0 && p2 == 0)
        throw std::domain_error("classify: tube vector must be nonzero");
    TubeVector t;
    t.p1 = p1;
    t.p2 = p2;
    t.metallic = ((p1 - p2) % 3) == 0;

    auto images = symmetry_images(p1, p2);
    for (const auto& q : images) {
        if (q.first == 0) {
            t.family = TubeFamily::Zigzag;
            t.normal_form = {0, std::abs(q.second)};
            return t;
        }
    }
    for (const auto& q : images) {
        if (q.first == q.second && q.first > 0) {
            t.family = TubeFamily::Armchair;
            t.normal_form = q;
            return t;
        }
    }
    t.family = TubeFamily::Chiral;
    std::pair<int, int> best{0, 0};
    for (const auto& q : images) {
        if (q.first >= q.second && q.second >= 0) {
            if (best == std::pair<int, int>{0, 0} || q < best) best = q;
        }
    }
    t.normal_form = best;
    return t;
}

std::vector<QuasimomentumLine> quasimomentum_lines(const TubeVector& p) {
    int bound = (std::abs(p.p1) + std::abs(p.p2)) / 2;
    std::vector<QuasimomentumLine> lines;
    for (int n = -bound; n <= bound; ++n) lines.push_back({n});
    return lines;
}

double alpha_zigzag_formula(int N) {
    if (N < 1) throw std::domain_error("alpha_zigzag_formula: N must be >= 1");
    if (N <= 2) return 1.0;
    int m = static_cast<int>(std::lround(N / 3.0));
    return std::abs(2.0 * std::cos(M_PI * m / N) - 1.0);
}

double alpha_minimized(const TubeVector& p, double tol) {
    double best = 9.0;
    for (const auto& ln : quasimomentum_lines(p))
        best = std::min(best, line_min_f2(p.p1, p.p2, ln.n, tol));
    return std::sqrt(std::max(0.0, best));
}

AlphaDetail alpha_detail(const TubeVector& p, double tol) {
    AlphaDetail d;
    double best = 9.0;
    for (const auto& ln : quasimomentum_lines(p)) {
        double v = line_min_f2(p.p1, p.p2, ln.n, tol);
        if (v < best) {
            best = v;
            d.minimizing_n = ln.n;
        }
    }
    d.minimized = std::sqrt(std::max(0.0, best));
    d.value = alpha(p, tol);
    int diff = p.p1 - p.p2;
    d.predicted_n = static_cast<int>(std::lround(diff / 3.0));
    d.matches_prediction =
        p.metallic || std::abs(d.minimizing_n) == std::abs(d.predicted_n);
    return d;
}

double alpha(const TubeVector& p, double tol) {
    if (p.metallic) return 0.0;
    if (p.family == TubeFamily::Zigzag)
        return alpha_zigzag_formula(p.normal_form.second);
    return alpha_minimized(p, tol);
}

XiLevels xi_levels(const BandStructure& bs) {
    XiLevels xi;
    for (int k = 0; k < static_cast<int>(bs.bands.size()); ++k) {
        if (bs.bands[static_cast<std::size_t>(k)].clipped()) {
            xi.partial = true;
            continue;
        }
        xi.levels.push_back(invert_discriminant_on_band(bs, k, 2.0 / 3.0, bs.tol));
        xi.levels.push_back(invert_discriminant_on_band(bs, k, -2.0 / 3.0, bs.tol));
    }
    std::sort(xi.levels.begin(), xi.levels.end());
    return xi;
}

TubeSpectrum tube_spectrum(const TubeVector& p, const Potential& q,
                           double lambda_min, double lambda_max, double tol) {
    TubeSpectrum ts;
    ts.tube = p;
    ts.alpha = alpha(p);
    ts.band_structure = band_structure(q, lambda_min, lambda_max, tol);
    ts.point_spectrum_dirichlet = ts.band_structure.dirichlet_eigenvalues;

    double threshold = (2.0 / 3.0) * ts.alpha;
    for (int k = 0; k < static_cast<int>(ts.band_structure.bands.size()); ++k) {
        const Band& b = ts.band_structure.bands[static_cast<std::size_t>(k)];
        if (b.clipped()) {
            ts.has_clipped_bands = true;
            ts.ac_bands.emplace_back(b.lo, b.hi);
            continue;
        }
        if (threshold <= 0.0) {
            ts.ac_bands.emplace_back(b.lo, b.hi);
            continue;
        }
        double la = invert_discriminant_on_band(ts.band_structure, k, threshold, tol);
        double lb = invert_discriminant_on_band(ts.band_structure, k, -threshold, tol);
        double cut_lo = std::min(la, lb), cut_hi = std::max(la, lb);
        ts.ac_bands.emplace_back(b.lo, cut_lo);
        ts.ac_bands.emplace_back(cut_hi, b.hi);
        ts.tube_gaps.push_back({cut_lo, cut_hi, k});
    }

    if (p.even_zigzag())
        ts.point_spectrum_xi = xi_levels(ts.band_structure).levels;
    return ts;
}

namespace {

TubeDispersionResult invert_on_all_bands(const BandStructure& bs, double rad) {
    TubeDispersionResult r;
    if (rad < 0.0) {
        rad = 0.0;
        r.clamped = true;
    }
    double val = std::min(2.0, (2.0 / 3.0) * std::sqrt(rad));
    for (int k = 0; k < static_cast<int>(bs.bands.size()); ++k) {
        if (bs.bands[static_cast<std::size_t>(k)].clipped()) continue;
        for (int s : {+1, -1}) {
            DispersionPoint pt;
            pt.band = k;
            pt.sign = s;
            pt.lambda = invert_discriminant_on_band(bs, k, s * val, bs.tol);
            r.points.push_back(pt);
        }
    }
    return r;
}

} // namespace

TubeDispersionResult zigzag_dispersion(int N, const BandStructure& bs, int n,
                                       double theta1) {
    if (N < 1 || n < 0 || n >= N)
        throw std::domain_error("zigzag_dispersion: need 0 <= n < N");
    double c = std::cos(M_PI * n / N);
    double rad = 1.0 + 4.0 * c * (c + std::cos(theta1 - M_PI * n / N));
    return invert_on_all_bands(bs, rad);
}

TubeDispersionResult armchair_dispersion(int N, const BandStructure& bs, int n,
                                         double theta1) {
    if (N < 1 || n < 0 || n >= N)
        throw std::domain_error("armchair_dispersion: need 0 <= n < N");
    double rad = 1.0 + 8.0 * std::cos(theta1 - M_PI * n / N) *
                           std::cos(0.5 * theta1) *
                           std::cos(0.5 * theta1 - M_PI * n / N);
    return invert_on_all_bands(bs, rad);
}

} // namespace hexband
