#include <doctest.h>

#include <cmath>

#include "hexband/nanotube.hpp"
#include "oracles.hpp"

using namespace hexband;

TEST_CASE("tube classification and normal forms") {
    auto z = classify(0, 3);
    CHECK(z.family == TubeFamily::Zigzag);
    CHECK(z.normal_form == std::pair<int, int>{0, 3});
    CHECK(z.metallic);

    CHECK(classify(3, 0).family == TubeFamily::Zigzag);
    CHECK(classify(3, 0).normal_form == std::pair<int, int>{0, 3});
    CHECK(classify(3, -3).family == TubeFamily::Zigzag);
    CHECK(classify(3, -3).normal_form == std::pair<int, int>{0, 3});

    auto a = classify(2, 2);
    CHECK(a.family == TubeFamily::Armchair);
    CHECK(a.normal_form == std::pair<int, int>{2, 2});
    CHECK(a.metallic);

    auto c = classify(4, 1);
    CHECK(c.family == TubeFamily::Chiral);
    CHECK(c.normal_form == std::pair<int, int>{4, 1});
    CHECK(c.metallic); // 4 - 1 divisible by 3

    auto s = classify(5, 1);
    CHECK_FALSE(s.metallic);

    CHECK(classify(0, 2).even_zigzag());
    CHECK_FALSE(classify(0, 3).even_zigzag());
    CHECK_FALSE(classify(2, 2).even_zigzag());

    CHECK_THROWS_AS(classify(0, 0), std::domain_error);
}

TEST_CASE("classification is invariant under the symmetry group") {
    // (1,4) is a 60-degree rotation image chain of (4,1)-type vectors.
    auto base = classify(4, 1);
    for (auto [p1, p2] : {std::pair<int, int>{1, 4}, {-1, 5}, {5, -1},
                          {-4, 5}, {-5, 4}}) {
        auto t = classify(p1, p2);
        CHECK(t.family == base.family);
        CHECK(t.normal_form == base.normal_form);
    }
}

TEST_CASE("quasimomentum lines of B_p") {
    CHECK(quasimomentum_lines(classify(0, 4)).size() == 5);  // |n| <= 2
    CHECK(quasimomentum_lines(classify(0, 1)).size() == 1);  // n = 0 only
    CHECK(quasimomentum_lines(classify(3, 3)).size() == 7);  // |n| <= 3
}

TEST_CASE("alpha closed form vs line minimization for zig-zag tubes") {
    for (int N = 1; N <= 30; ++N) {
        auto t = classify(0, N);
        double formula = alpha_zigzag_formula(N);
        double minimized = alpha_minimized(t);
        CHECK(std::abs(formula - minimized) < 1e-8);
        CHECK(alpha(t) == doctest::Approx(formula).epsilon(1e-12));
        if (N % 3 == 0) CHECK(alpha(t) == 0.0);
        if (N <= 2) CHECK(alpha(t) == 1.0);
    }
    CHECK(alpha(classify(0, 4)) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("alpha vanishes exactly for metallic tubes") {
    CHECK(alpha(classify(5, 5)) == 0.0);
    CHECK(alpha(classify(4, 1)) == 0.0);
    CHECK(alpha(classify(0, 6)) == 0.0);
}

TEST_CASE("alpha detail reports the minimizing line") {
    auto d = alpha_detail(classify(0, 4));
    CHECK(d.value == doctest::Approx(d.minimized).epsilon(1e-7));
    CHECK(d.matches_prediction);
    auto d2 = alpha_detail(classify(5, 1));
    CHECK(d2.value == doctest::Approx(d2.minimized).epsilon(1e-7));
    CHECK(d2.value > 0.0);
    CHECK(d2.value < 1.0);
}

TEST_CASE("alpha of large zig-zag tubes decays like pi / (sqrt(3) N)") {
    // Non-metallic (0,N): alpha ~ pi/(sqrt(3) N) as N grows.
    for (int N : {50, 100, 200}) {
        if (N % 3 == 0) continue;
        double a = alpha_zigzag_formula(N);
        double limit = M_PI / (std::sqrt(3.0) * N);
        CHECK(a == doctest::Approx(limit).epsilon(0.02));
    }
}

TEST_CASE("free tube spectrum for (0,2): xi at the ac band edges") {
    auto ts = tube_spectrum(classify(0, 2), Potential::zero(), -1.0, 100.0);
    CHECK(ts.alpha == 1.0);
    REQUIRE(ts.point_spectrum_xi.size() == 6);
    for (double x : ts.point_spectrum_xi) {
        double best = 1e9;
        for (auto [lo, hi] : ts.ac_bands)
            best = std::min({best, std::abs(x - lo), std::abs(x - hi)});
        CHECK(best < 1e-9);
    }
    CHECK(ts.tube_gaps.size() == 3); // one per full Hill band
}

TEST_CASE("free tube spectrum for (0,4): xi embedded inside the ac bands") {
    auto ts = tube_spectrum(classify(0, 4), Potential::zero(), -1.0, 100.0);
    CHECK(ts.alpha == doctest::Approx(std::sqrt(2.0) - 1.0));
    REQUIRE(ts.point_spectrum_xi.size() == 6);
    for (double x : ts.point_spectrum_xi) {
        bool inside = false;
        for (auto [lo, hi] : ts.ac_bands)
            if (x > lo + 1e-3 && x < hi - 1e-3) inside = true;
        CHECK(inside);
    }
    CHECK(ts.tube_gaps.size() == 3);
    // Each tube gap lies strictly inside a Hill band.
    for (const auto& g : ts.tube_gaps) {
        const Band& b = ts.band_structure.bands[static_cast<std::size_t>(g.band)];
        CHECK(g.lo > b.lo);
        CHECK(g.hi < b.hi);
        CHECK(g.lo < g.hi);
    }
}

TEST_CASE("metallic tube spectrum equals the Hill spectrum") {
    auto ts = tube_spectrum(classify(5, 5), Potential::cosine(1.0, 1), -5.0, 100.0);
    CHECK(ts.alpha == 0.0);
    CHECK(ts.tube_gaps.empty());
    CHECK(ts.point_spectrum_xi.empty());
    REQUIRE(ts.ac_bands.size() == ts.band_structure.bands.size());
    for (std::size_t i = 0; i < ts.ac_bands.size(); ++i) {
        CHECK(ts.ac_bands[i].first == ts.band_structure.bands[i].lo);
        CHECK(ts.ac_bands[i].second == ts.band_structure.bands[i].hi);
    }
}

TEST_CASE("odd zig-zag tubes carry no xi levels") {
    auto ts = tube_spectrum(classify(0, 3), Potential::zero(), -1.0, 50.0);
    CHECK(ts.point_spectrum_xi.empty());
}

TEST_CASE("equivalent tube vectors produce identical spectra") {
    auto q = Potential::cosine(1.0, 1);
    auto a = tube_spectrum(classify(0, 3), q, -2.0, 100.0);
    auto b = tube_spectrum(classify(3, 0), q, -2.0, 100.0);
    auto c = tube_spectrum(classify(3, -3), q, -2.0, 100.0);
    REQUIRE(a.ac_bands.size() == b.ac_bands.size());
    REQUIRE(a.ac_bands.size() == c.ac_bands.size());
    for (std::size_t i = 0; i < a.ac_bands.size(); ++i) {
        CHECK(std::abs(a.ac_bands[i].first - b.ac_bands[i].first) < 1e-9);
        CHECK(std::abs(a.ac_bands[i].second - c.ac_bands[i].second) < 1e-9);
    }
}

TEST_CASE("zig-zag dispersion matches the bloch factor along B_p lines") {
    auto bs = band_structure(Potential::zero(), -1.0, 100.0);
    const int N = 5;
    for (int n : {0, 1, 3}) {
        for (double t1 : {0.3, 1.1, 2.7}) {
            auto r = zigzag_dispersion(N, bs, n, t1);
            // The radicand equals F^2 on the line theta2 = 2 pi n / N.
            double f = bloch_factor_modified({t1, 2.0 * M_PI * n / N});
            double expect = std::min(2.0, (2.0 / 3.0) * f);
            for (const auto& pt : r.points) {
                double d = discriminant(Potential::zero(), pt.lambda, 1e-12);
                CHECK(std::abs(std::abs(d) - expect) < 1e-8);
            }
        }
    }
}

TEST_CASE("armchair dispersion stays inside the bands") {
    auto bs = band_structure(Potential::cosine(1.0, 1), -5.0, 100.0);
    auto r = armchair_dispersion(4, bs, 1, 0.8);
    CHECK_FALSE(r.points.empty());
    for (const auto& pt : r.points) {
        const Band& b = bs.bands[static_cast<std::size_t>(pt.band)];
        CHECK(pt.lambda >= b.lo - 1e-10);
        CHECK(pt.lambda <= b.hi + 1e-10);
    }
    CHECK_THROWS_AS(armchair_dispersion(4, bs, 7, 0.0), std::domain_error);
    CHECK_THROWS_AS(zigzag_dispersion(0, bs, 0, 0.0), std::domain_error);
}

TEST_CASE("xi levels match scalar root finding in the free case") {
    auto bs = band_structure(Potential::zero(), -1.0, 100.0);
    auto xi = xi_levels(bs);
    REQUIRE(xi.levels.size() == 6);
    CHECK(xi.partial); // band 3 is clipped by the window
    double l0 = std::pow(std::acos(1.0 / 3.0), 2);
    double l1 = std::pow(std::acos(-1.0 / 3.0), 2);
    CHECK(xi.levels[0] == doctest::Approx(l0).epsilon(1e-10));
    CHECK(xi.levels[1] == doctest::Approx(l1).epsilon(1e-10));
    CHECK(xi.levels[2] == doctest::Approx(std::pow(2.0 * M_PI - std::acos(-1.0 / 3.0), 2)).epsilon(1e-10));
    CHECK(xi.levels[3] == doctest::Approx(std::pow(2.0 * M_PI - std::acos(1.0 / 3.0), 2)).epsilon(1e-10));
}
