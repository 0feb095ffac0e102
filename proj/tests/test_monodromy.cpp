#include <doctest.h>

#include <cmath>
#include <random>

#include "hexband/hill.hpp"
#include "hexband/ode.hpp"
#include "oracles.hpp"

using namespace hexband;

TEST_CASE("free monodromy matrix matches the closed form") {
    auto p = Potential::zero();
    SUBCASE("positive lambda") {
        double lam = 7.3, mu = std::sqrt(lam);
        auto m = monodromy(p, lam);
        CHECK(m.c1 == doctest::Approx(std::cos(mu)).epsilon(1e-12));
        CHECK(m.s1 == doctest::Approx(std::sin(mu) / mu).epsilon(1e-12));
        CHECK(m.c1p == doctest::Approx(-mu * std::sin(mu)).epsilon(1e-12));
        CHECK(m.s1p == doctest::Approx(std::cos(mu)).epsilon(1e-12));
        CHECK(m.discriminant == doctest::Approx(2.0 * std::cos(mu)).epsilon(1e-12));
        CHECK(m.eta == doctest::Approx(std::cos(mu)).epsilon(1e-12));
    }
    SUBCASE("negative lambda") {
        double lam = -4.2, nu = std::sqrt(-lam);
        auto m = monodromy(p, lam);
        CHECK(m.c1 == doctest::Approx(std::cosh(nu)).epsilon(1e-12));
        CHECK(m.s1 == doctest::Approx(std::sinh(nu) / nu).epsilon(1e-12));
        CHECK(m.discriminant ==
              doctest::Approx(2.0 * std::cosh(nu)).epsilon(1e-12));
    }
    SUBCASE("lambda = 0") {
        auto m = monodromy(p, 0.0);
        CHECK(m.c1 == doctest::Approx(1.0));
        CHECK(m.s1 == doctest::Approx(1.0));
        CHECK(m.discriminant == doctest::Approx(2.0));
    }
}

TEST_CASE("determinant of the monodromy matrix is 1") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-25.0, 250.0);
    std::vector<Potential> pots = {
        Potential::zero(), Potential::cosine(4.0, 1),
        Potential::cosine(-2.5, 2),
        Potential::piecewise_constant({0.25, 0.75}, {3.0, -1.0, 3.0}),
        Potential::polynomial({1.0, -4.0, 4.0})};
    for (const auto& p : pots) {
        for (int i = 0; i < 40; ++i) {
            auto m = monodromy(p, dist(rng), 1e-11);
            CHECK(std::abs(m.det() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("even potential forces c(1) = s'(1)") {
    for (const auto& p :
         {Potential::cosine(5.0, 1), Potential::cosine(2.0, 3),
          Potential::piecewise_constant({0.25, 0.75}, {2.0, -3.0, 2.0}),
          Potential::tabulated({0.0, 0.5, 2.0, 0.5, 0.0})}) {
        for (double lam : {-3.0, 1.5, 20.0, 77.0}) {
            auto m = monodromy(p, lam);
            CHECK(m.c1 == doctest::Approx(m.s1p).epsilon(1e-9));
        }
    }
}

TEST_CASE("discriminant agrees with the Numerov oracle") {
    struct Case { Potential p; double tol; };
    std::vector<Case> cases = {
        {Potential::cosine(3.0, 1), 2e-8},
        {Potential::cosine(-7.0, 2), 2e-8},
        {Potential::polynomial({2.0, -8.0, 8.0}), 2e-8},
        {Potential::tabulated({0.0, 1.0, 2.0, 1.0, 0.0}), 1e-7},
    };
    for (const auto& c : cases) {
        for (double lam : {-5.0, 0.7, 13.0, 61.0, 140.0}) {
            double lib = discriminant(c.p, lam, 1e-12);
            double ref = oracle::numerov_discriminant(c.p, lam, 16000);
            CHECK(std::abs(lib - ref) < c.tol);
        }
    }
}

TEST_CASE("piecewise-constant transfer is exact against the closed form") {
    // Single step of height q over [0,1]: the transfer matrix is the
    // constant-coefficient rotation/hyperbolic matrix.
    auto p = Potential::piecewise_constant({0.5}, {4.0, 4.0});
    double lam = 9.0, w = std::sqrt(lam - 4.0);
    auto m = monodromy(p, lam);
    CHECK(m.c1 == doctest::Approx(std::cos(w)).epsilon(1e-14));
    CHECK(m.s1 == doctest::Approx(std::sin(w) / w).epsilon(1e-14));
}

TEST_CASE("fixed-step integrator converges at fourth order") {
    auto p = Potential::cosine(3.0, 1);
    double lam = 11.0;
    auto ref = monodromy(p, lam, 1e-13);
    auto err = [&](int steps) {
        Mat2 m = transfer_matrix_fixed(p, lam, 0.0, 1.0, steps);
        return std::abs(m.a11 + m.a22 - ref.discriminant);
    };
    double e1 = err(100), e2 = err(200);
    CHECK(e1 / e2 > 10.0); // ~16 for a 4th-order method
    CHECK(e1 / e2 < 30.0);
}

TEST_CASE("constant piece transfer handles the omega = 0 corner") {
    // lambda == q: u'' = 0, transfer is the shear [[1, h], [0, 1]].
    Mat2 m = constant_piece_transfer(5.0, 5.0, 0.3);
    CHECK(m.a11 == doctest::Approx(1.0));
    CHECK(m.a12 == doctest::Approx(0.3));
    CHECK(m.a21 == doctest::Approx(0.0));
    CHECK(m.a22 == doctest::Approx(1.0));
    // Near-zero omega: series fallback must agree with the trig branch.
    Mat2 a = constant_piece_transfer(5.0, 5.0 + 1e-9, 0.3);
    CHECK(a.a12 == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("monodromy rejects a non-positive tolerance") {
    CHECK_THROWS_AS(monodromy(Potential::zero(), 1.0, 0.0),
                    std::invalid_argument);
}
