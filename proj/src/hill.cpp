#include "hexband/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hexband/errors.hpp"
#include "hexband/kernels.hpp"
#include "hexband/rootfind.hpp"

namespace hexband {
namespace {

// Scan grid uniform in t = sqrt(lambda - lambda_lo); band edges of the Hill
// operator are asymptotically equally spaced in sqrt(lambda).
std::vector<double> scan_grid(double lo, double hi, double dt) {
    double tmax = std::sqrt(std::max(hi - lo, 1e-6));
    int n = std::max(128, static_cast<int>(std::ceil(tmax / dt)));
    std::vector<double> grid(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double t = tmax * static_cast<double>(i) / n;
        grid[static_cast<std::size_t>(i)] = lo + t * t;
    }
    grid.back() = hi;
    return grid;
}

struct EdgeEvent {
    double lambda;
    int d_val;   // +2 or -2
    bool tangent; // double root (closed gap); appears twice in the list
};

double lam_tol(double lambda) { return 1e-11 * std::max(1.0, std::abs(lambda)); }

} // namespace

MonodromyData monodromy(const Potential& p, double lambda, double tol) {
    if (tol <= 0.0)
        throw std::invalid_argument("monodromy: tol must be positive");
    Mat2 m = transfer_matrix(p, lambda, 0.0, 1.0, tol);
    MonodromyData d;
    d.lambda = lambda;
    d.c1 = m.a11;
    d.s1 = m.a12;
    d.c1p = m.a21;
    d.s1p = m.a22;
    d.discriminant = d.c1 + d.s1p;
    d.eta = 0.5 * d.discriminant;
    return d;
}

double discriminant(const Potential& p, double lambda, double tol) {
    return monodromy(p, lambda, tol).discriminant;
}

std::vector<double> dirichlet_spectrum(const Potential& p, double lambda_min,
                                       double lambda_max, double tol) {
    if (lambda_min >= lambda_max)
        throw std::invalid_argument("dirichlet_spectrum: empty window");
    auto grid = scan_grid(lambda_min, lambda_max, 0.01);
    auto data = sweep_monodromy(p, grid, tol, Exec::Parallel);
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double fa = data[i].s1, fb = data[i + 1].s1;
        if (fa == 0.0 && i == 0) { roots.push_back(grid[i]); continue; }
        if (fb == 0.0) { roots.push_back(grid[i + 1]); continue; }
        if (fa * fb < 0.0) {
            double r = brent_root(
                [&](double x) { return monodromy(p, x, tol).s1; },
                grid[i], grid[i + 1], fa, fb, lam_tol(grid[i + 1]));
            roots.push_back(r);
        }
    }
    return roots;
}

BandStructure band_structure(const Potential& p, double lambda_min,
                             double lambda_max, double tol) {
    if (lambda_min >= lambda_max)
        throw std::invalid_argument("band_structure: empty window");

    BandStructure bs;
    bs.potential = p;
    bs.tol = tol;
    bs.window_lo = lambda_min;
    bs.window_hi = lambda_max;

    auto dfun = [&](double x) { return monodromy(p, x, tol).discriminant; };

    // Expand the scan downward until D > 2 is observed: below the spectrum
    // the discriminant exceeds 2, so this guarantees the ground edge a0 is
    // inside the scanned range.
    double lo = std::min(lambda_min, p.grid_min() - 1.0);
    double step = 1.0;
    for (int guard = 0; dfun(lo) <= 2.0; ++guard) {
        if (guard > 60)
            throw NumericError("band_structure: could not find D > 2 below the window", lo);
        lo -= step;
        step *= 2.0;
    }

    auto grid = scan_grid(lo, lambda_max, 0.01);
    auto data = sweep_monodromy(p, grid, tol, Exec::Parallel);

    // Dirichlet eigenvalues over the scanned range; used both for the report
    // and to pin down tangency points (for even potentials a closed gap
    // collapses onto the Dirichlet eigenvalue).
    std::vector<double> dir_all;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double fa = data[i].s1, fb = data[i + 1].s1;
        if (fb == 0.0) { dir_all.push_back(grid[i + 1]); continue; }
        if (fa * fb < 0.0)
            dir_all.push_back(brent_root(
                [&](double x) { return monodromy(p, x, tol).s1; },
                grid[i], grid[i + 1], fa, fb, lam_tol(grid[i + 1])));
    }

    std::vector<EdgeEvent> events;
    auto add_crossings = [&](int d_val) {
        double target = static_cast<double>(d_val);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double fa = data[i].discriminant - target;
            double fb = data[i + 1].discriminant - target;
            if (fa * fb < 0.0) {
                double r = brent_root([&](double x) { return dfun(x) - target; },
                                      grid[i], grid[i + 1], fa, fb,
                                      lam_tol(grid[i + 1]));
                events.push_back({r, d_val, false});
            } else if (fb == 0.0) {
                events.push_back({grid[i + 1], d_val, false});
            }
        }
    };
    add_crossings(+2);
    add_crossings(-2);

    // For even potentials every gap edge is a simple root of s1 (Dirichlet)
    // or c1p (Neumann); those roots stay well conditioned even when the gap
    // is so shallow that D -+ 2 barely leaves zero.
    const bool even_ok = validate_evenness(p, 512).ok;
    auto root_near = [&](double a, double b, bool use_c1p) -> double {
        auto g = [&](double x) {
            MonodromyData m = monodromy(p, x, tol);
            return use_c1p ? m.c1p : m.s1;
        };
        double ga = g(a), gb = g(b);
        if (ga == 0.0) return a;
        if (gb == 0.0) return b;
        if (ga * gb > 0.0) return std::numeric_limits<double>::quiet_NaN();
        return brent_root(g, a, b, ga, gb, lam_tol(b));
    };

    // Local extrema of D: every extremum sits in a gap with |D| >= 2 there.
    // A refined extremum just beyond +-2 is a near-closed gap the sign scan
    // missed; one at +-2 (within noise) is a closed gap (double root).
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        double dl = data[i].discriminant - data[i - 1].discriminant;
        double dr = data[i + 1].discriminant - data[i].discriminant;
        if (dl * dr >= 0.0) continue;
        bool is_max = dl > 0.0;
        double sgn = is_max ? 1.0 : -1.0;
        auto [xext, fext] = golden_min(
            [&](double x) { return -sgn * dfun(x); }, grid[i - 1], grid[i + 1],
            lam_tol(grid[i + 1]));
        double e = -fext * sgn;               // extremum value of D
        double excess = sgn * e - 2.0;        // how far beyond the band bound
        int d_val = is_max ? 2 : -2;
        double target = static_cast<double>(d_val);
        if (even_ok) {
            if (sgn * (data[i].discriminant - target) >= 0.0) continue; // sign scan saw it
            double rd = root_near(grid[i - 1], grid[i + 1], false);
            double rn = root_near(grid[i - 1], grid[i + 1], true);
            if (std::isfinite(rd) && std::isfinite(rn)) {
                if (std::abs(rd - rn) <= 100.0 * lam_tol(grid[i + 1])) {
                    events.push_back({rd, d_val, true});
                    events.push_back({rd, d_val, true});
                } else {
                    events.push_back({std::min(rd, rn), d_val, false});
                    events.push_back({std::max(rd, rn), d_val, false});
                }
                continue;
            }
            // Roots not bracketed (should not happen for a genuine extremum);
            // fall through to the discriminant-based classification.
        }
        if (excess > 0.0) {
            // Near-closed gap the sign scan missed: the middle sample is
            // still inside (-2,2) while the refined extremum pokes beyond.
            if (sgn * (data[i].discriminant - target) >= 0.0) continue; // already seen by sign scan
            double fl = data[i - 1].discriminant - target;
            double fr = data[i + 1].discriminant - target;
            double fe = e - target;
            events.push_back({brent_root([&](double x) { return dfun(x) - target; },
                                         grid[i - 1], xext, fl, fe,
                                         lam_tol(xext)),
                              d_val, false});
            events.push_back({brent_root([&](double x) { return dfun(x) - target; },
                                         xext, grid[i + 1], fe, fr,
                                         lam_tol(grid[i + 1])),
                              d_val, false});
        } else if (-excess < 1e-7) {
            // Tangency.  Snap to the Dirichlet eigenvalue when one sits
            // within the quadratic noise width; exact for even potentials.
            double where = xext;
            double snap = 1e-5 * std::max(1.0, std::abs(xext));
            for (double d : dir_all)
                if (std::abs(d - xext) < snap) { where = d; break; }
            events.push_back({where, d_val, true});
            events.push_back({where, d_val, true});
        }
        // Otherwise the extremum is well inside (-2,2); cannot happen for a
        // genuine Hill discriminant, ignore as sampling noise.
    }

    std::sort(events.begin(), events.end(),
              [](const EdgeEvent& a, const EdgeEvent& b) { return a.lambda < b.lambda; });

    if (events.empty() || events.front().d_val != 2)
        throw ResolutionError("band_structure: no ground band edge found", lo,
                              lambda_max);

    if (even_ok) {
        // Re-derive every edge from its s1/c1p root.  The sign scan roots
        // D -+ 2 directly, which loses several digits whenever the gap depth
        // in D is near the integration noise floor.
        const double sep = 100.0 * lam_tol(lambda_max);
        {
            double a = events[0].lambda;
            double w = 1e-3 * std::max(1.0, std::abs(a));
            double hi_b = a + w;
            if (events.size() > 1)
                hi_b = std::min(hi_b, 0.5 * (a + events[1].lambda));
            double rn = root_near(a - w, hi_b, true);
            if (std::isfinite(rn)) events[0].lambda = rn;
        }
        for (std::size_t i = 1; i + 1 < events.size(); i += 2) {
            if (events[i].tangent) continue;
            double a = events[i].lambda, b = events[i + 1].lambda;
            double w = 1e-3 * std::max(1.0, std::abs(b));
            double lo_b = std::max(a - w, 0.5 * (events[i - 1].lambda + a));
            double hi_b = b + w;
            if (i + 2 < events.size())
                hi_b = std::min(hi_b, 0.5 * (b + events[i + 2].lambda));
            double rd = root_near(lo_b, hi_b, false);
            double rn = root_near(lo_b, hi_b, true);
            if (!std::isfinite(rd) || !std::isfinite(rn)) continue;
            if (std::abs(rd - rn) <= sep) {
                events[i].lambda = events[i + 1].lambda = rd;
                events[i].tangent = events[i + 1].tangent = true;
            } else {
                events[i].lambda = std::min(rd, rn);
                events[i + 1].lambda = std::max(rd, rn);
            }
        }
        if (events.size() % 2 == 0 && events.size() >= 2) {
            // Lone trailing edge (the window ends inside a gap): this is the
            // lower of the two gap-edge roots.
            std::size_t L = events.size() - 1;
            if (!events[L].tangent) {
                double a = events[L].lambda;
                double w = 1e-3 * std::max(1.0, std::abs(a));
                double lo_b = std::max(a - w, 0.5 * (events[L - 1].lambda + a));
                double rd = root_near(lo_b, a + w, false);
                double rn = root_near(lo_b, a + w, true);
                double best = std::numeric_limits<double>::infinity();
                if (std::isfinite(rd)) best = std::min(best, rd);
                if (std::isfinite(rn)) best = std::min(best, rn);
                if (std::isfinite(best)) events[L].lambda = best;
            }
        }
    }

    // Events follow a0; b0,b1; a1,a2; ... Validate the alternation and build
    // the full (unclipped) band/gap sequence.
    std::vector<Band> full_bands;
    std::vector<Gap> full_gaps;
    {
        double band_lo = events[0].lambda;
        double band_dlo = 2.0;
        int expect = -2;
        bool pending = true;
        std::size_t i = 1;
        while (i < events.size()) {
            if (events[i].d_val != expect)
                throw ResolutionError("band_structure: edge alternation violated",
                                      events[i].lambda, events[i].lambda);
            Band b;
            b.lo = band_lo;
            b.hi = events[i].lambda;
            b.d_lo = band_dlo;
            full_bands.push_back(b);
            pending = false;
            if (i + 1 >= events.size()) break; // window ends inside a gap
            if (events[i + 1].d_val != expect)
                throw ResolutionError("band_structure: gap edge pairing violated",
                                      events[i + 1].lambda, events[i + 1].lambda);
            Gap g;
            g.lo = events[i].lambda;
            g.hi = events[i + 1].lambda;
            g.closed = events[i].tangent || g.hi - g.lo <= 0.0;
            if (g.closed) g.lo = g.hi = 0.5 * (g.lo + g.hi);
            full_gaps.push_back(g);
            band_lo = events[i + 1].lambda;
            band_dlo = static_cast<double>(expect);
            pending = true;
            i += 2;
            expect = -expect;
        }
        if (pending) {
            // The last band runs past the end of the window.
            Band b;
            b.lo = band_lo;
            b.hi = lambda_max;
            b.d_lo = band_dlo;
            b.clipped_hi = true;
            full_bands.push_back(b);
        }
    }

    // Clip to the requested window.
    for (const auto& b : full_bands) {
        if (b.hi < lambda_min || b.lo > lambda_max) continue;
        Band c = b;
        if (c.lo < lambda_min) { c.lo = lambda_min; c.clipped_lo = true; }
        if (c.hi > lambda_max) { c.hi = lambda_max; c.clipped_hi = true; }
        bs.bands.push_back(c);
    }
    for (const auto& g : full_gaps)
        if (g.hi >= lambda_min && g.lo <= lambda_max) bs.gaps.push_back(g);

    for (const auto& ev : events) {
        if (ev.lambda < lambda_min || ev.lambda > lambda_max) continue;
        if (ev.d_val == 2) bs.periodic_eigenvalues.push_back(ev.lambda);
        else bs.antiperiodic_eigenvalues.push_back(ev.lambda);
    }
    for (double d : dir_all)
        if (d >= lambda_min && d <= lambda_max)
            bs.dirichlet_eigenvalues.push_back(d);

    return bs;
}

double invert_discriminant_on_band(const BandStructure& bs, int band_index,
                                   double target, double tol) {
    if (std::abs(target) > 2.0)
        throw std::domain_error("invert_discriminant_on_band: |target| > 2");
    if (band_index < 0 || band_index >= static_cast<int>(bs.bands.size()))
        throw std::domain_error("invert_discriminant_on_band: no such band");
    const Band& b = bs.bands[static_cast<std::size_t>(band_index)];
    if (b.clipped())
        throw NumericError("invert_discriminant_on_band: band clipped by the window",
                           b.lo);
    auto f = [&](double x) {
        return monodromy(bs.potential, x, bs.tol).discriminant - target;
    };
    double fa = f(b.lo), fb = f(b.hi);
    if (fa * fb > 0.0) {
        // Integration noise at an edge hit by the target value itself.
        if (std::abs(fa) < 1e-6) return b.lo;
        if (std::abs(fb) < 1e-6) return b.hi;
        throw NumericError("invert_discriminant_on_band: target not bracketed", b.lo);
    }
    double r = brent_root(f, b.lo, b.hi, fa, fb, lam_tol(b.hi));
    (void)tol;
    return r;
}

} // namespace hexband
