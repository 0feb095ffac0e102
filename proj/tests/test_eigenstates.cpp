#include <doctest.h>

#include <cmath>

#include "hexband/eigenstates.hpp"
#include "hexband/errors.hpp"
#include "hexband/hill.hpp"
#include "hexband/nanotube.hpp"

using namespace hexband;

namespace {

int sign_of(const EdgeFunction& e) {
    // Sign of the edge function at its largest sample.
    double best = 0.0;
    for (double v : e.samples)
        if (std::abs(v) > std::abs(best)) best = v;
    return best >= 0.0 ? +1 : -1;
}

int count_alternations(const GraphState& st) {
    int flips = 0;
    const int n = static_cast<int>(st.edges.size());
    for (int i = 0; i < n; ++i)
        if (sign_of(st.edges[static_cast<std::size_t>(i)]) !=
            sign_of(st.edges[static_cast<std::size_t>((i + 1) % n)]))
            ++flips;
    return flips;
}

} // namespace

TEST_CASE("dirichlet eigenfunction parities in the free case") {
    auto p = Potential::zero();
    auto [psi1, par1] = dirichlet_eigenfunction(p, M_PI * M_PI);
    CHECK(par1 == Parity::Even); // sin(pi x) is symmetric about 1/2
    // sup-norm 1, attained at x = 1/2.
    CHECK(psi1.samples[psi1.samples.size() / 2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(psi1.value0() == doctest::Approx(0.0));
    CHECK(psi1.value1() == doctest::Approx(0.0));

    auto [psi2, par2] = dirichlet_eigenfunction(p, 4.0 * M_PI * M_PI);
    CHECK(par2 == Parity::Odd); // sin(2 pi x) is antisymmetric about 1/2
    (void)psi2;

    CHECK_THROWS_AS(dirichlet_eigenfunction(p, 5.0), std::domain_error);
}

TEST_CASE("dirichlet eigenfunction matches sin(pi x)") {
    auto p = Potential::zero();
    auto [psi, par] = dirichlet_eigenfunction(p, M_PI * M_PI);
    (void)par;
    const auto n = psi.samples.size();
    for (std::size_t i = 0; i < n; i += 17) {
        double x = static_cast<double>(i) / static_cast<double>(n - 1);
        CHECK(psi.samples[i] == doctest::Approx(std::sin(M_PI * x)).epsilon(1e-8));
    }
    CHECK(psi.d0 == doctest::Approx(M_PI).epsilon(1e-9));
    CHECK(psi.d1 == doctest::Approx(-M_PI).epsilon(1e-9));
}

TEST_CASE("hexagon loop states verify and use the right sign pattern") {
    auto p = Potential::zero();
    auto even = build_hexagon_loop(p, M_PI * M_PI);
    CHECK(even.parity == Parity::Even);
    CHECK(count_alternations(even) == 6); // strict alternation on the 6-cycle
    auto rep = verify_state(even, p, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.vertex_residual < 1e-10);
    CHECK(rep.flux_residual < 1e-10);

    auto odd = build_hexagon_loop(p, 4.0 * M_PI * M_PI);
    CHECK(odd.parity == Parity::Odd);
    CHECK(count_alternations(odd) == 0); // identical copies
    CHECK(verify_state(odd, p, 1e-8).pass);
}

TEST_CASE("hexagon loop with a nonzero potential") {
    auto p = Potential::cosine(1.0, 1);
    auto bs = band_structure(p, -2.0, 50.0);
    REQUIRE(!bs.dirichlet_eigenvalues.empty());
    auto st = build_hexagon_loop(p, bs.dirichlet_eigenvalues[0]);
    CHECK(st.parity == Parity::Even); // ground Dirichlet state is nodeless
    auto rep = verify_state(st, p, 1e-7);
    CHECK(rep.pass);
}

TEST_CASE("tube loop states close around rings of every size") {
    auto p = Potential::zero();
    auto st2 = build_tube_loop(p, M_PI * M_PI, 2);
    CHECK(st2.edges.size() == 4);
    CHECK(verify_state(st2, p, 1e-8).pass);

    auto st3 = build_tube_loop(p, 4.0 * M_PI * M_PI, 3);
    CHECK(st3.edges.size() == 6);
    CHECK(count_alternations(st3) == 0);
    CHECK(verify_state(st3, p, 1e-8).pass);

    auto st7 = build_tube_loop(p, M_PI * M_PI, 7); // 14 edges, alternation closes
    CHECK(verify_state(st7, p, 1e-8).pass);

    CHECK_THROWS_AS(build_tube_loop(p, M_PI * M_PI, 0), std::domain_error);
}

TEST_CASE("dumbbell states on the (0,1) necklace tube") {
    auto p = Potential::zero();
    auto bead = build_dumbbell(p, M_PI * M_PI, false);
    CHECK(bead.edges.size() == 2);
    CHECK(verify_state(bead, p, 1e-8).pass);

    auto full = build_dumbbell(p, M_PI * M_PI, true);
    CHECK(full.edges.size() == 5);
    // Flux balance forces the link to carry the zero function.
    for (double v : full.edges[2].samples) CHECK(v == 0.0);
    CHECK(verify_state(full, p, 1e-8).pass);

    auto full_odd = build_dumbbell(p, 4.0 * M_PI * M_PI, true);
    CHECK(verify_state(full_odd, p, 1e-8).pass);
}

TEST_CASE("three-leaf states at the free xi levels") {
    auto p = Potential::zero();
    double lam_plus = std::pow(std::acos(1.0 / 3.0), 2);
    auto plus = build_three_leaf(p, lam_plus, +1);
    CHECK(plus.edges.size() == 5);
    auto rp = verify_state(plus, p, 1e-8);
    CHECK(rp.pass);
    CHECK(rp.vertex_residual < 1e-9);
    CHECK(rp.flux_residual < 1e-9);

    double lam_minus = std::pow(std::acos(-1.0 / 3.0), 2);
    auto minus = build_three_leaf(p, lam_minus, -1);
    CHECK(verify_state(minus, p, 1e-8).pass);

    // Derivative identity phi1'(0) = 3 sign phi1'(1) at construction.
    CHECK(plus.edges[0].d0 == doctest::Approx(3.0 * plus.edges[0].d1).epsilon(1e-9));
    CHECK(minus.edges[0].d0 == doctest::Approx(-3.0 * minus.edges[0].d1).epsilon(1e-9));
}

TEST_CASE("three-leaf construction guards") {
    auto p = Potential::zero();
    double lam_plus = std::pow(std::acos(1.0 / 3.0), 2);
    // Sign mismatch: eta(lambda) = +1/3 cannot build the minus state.
    CHECK_THROWS_AS(build_three_leaf(p, lam_plus, -1), std::domain_error);
    CHECK_THROWS_AS(build_three_leaf(p, lam_plus, 2), std::domain_error);
    // Dirichlet eigenvalue: the phi basis is degenerate there.
    CHECK_THROWS_AS(build_three_leaf(p, M_PI * M_PI, +1), NumericError);
    // Far from the xi level entirely.
    CHECK_THROWS_AS(build_three_leaf(p, 0.1, +1), std::domain_error);
}

TEST_CASE("three-leaf verification is sensitive to a lambda perturbation") {
    auto p = Potential::zero();
    double lam = std::pow(std::acos(1.0 / 3.0), 2) + 1e-3;
    auto st = build_three_leaf(p, lam, +1); // loose construction succeeds
    auto rep = verify_state(st, p, 1e-8);
    CHECK_FALSE(rep.pass);
    CHECK(rep.flux_residual > 1e-4);
}

TEST_CASE("three-leaf state with a nonzero potential") {
    auto p = Potential::cosine(1.0, 1);
    auto bs = band_structure(p, -2.0, 50.0);
    auto xi = xi_levels(bs);
    REQUIRE(!xi.levels.empty());
    double lam = xi.levels[0];
    int sign = monodromy(p, lam).eta > 0.0 ? +1 : -1;
    auto st = build_three_leaf(p, lam, sign);
    auto rep = verify_state(st, p, 1e-7);
    CHECK(rep.pass);
    CHECK(rep.flux_residual < 1e-7);
}

TEST_CASE("verify_state reports vertex mismatches") {
    auto p = Potential::zero();
    auto st = build_hexagon_loop(p, M_PI * M_PI);
    st.edges[0].samples[0] = 0.5; // break continuity at a vertex
    auto rep = verify_state(st, p, 1e-8);
    CHECK_FALSE(rep.pass);
    CHECK(rep.vertex_residual > 0.1);
}
