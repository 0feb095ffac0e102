#include "hexband/eigenstates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hexband/errors.hpp"
#include "hexband/ode.hpp"

namespace hexband {
namespace {

struct BasisSamples {
    std::vector<double> c, s;   // values at uniform sample points
    double c1, c1p, s1, s1p;    // endpoint data at x = 1
    double cp0 = 0.0, sp0 = 1.0;
};

BasisSamples sample_basis(const Potential& p, double lambda, int n, double tol) {
    BasisSamples b;
    b.c.resize(static_cast<std::size_t>(n));
    b.s.resize(static_cast<std::size_t>(n));
    double cv = 1.0, cd = 0.0, sv = 0.0, sd = 1.0;
    b.c[0] = cv;
    b.s[0] = sv;
    for (int i = 1; i < n; ++i) {
        double x0 = static_cast<double>(i - 1) / (n - 1);
        double x1 = static_cast<double>(i) / (n - 1);
        Mat2 m = transfer_matrix(p, lambda, x0, x1, tol);
        double ncv = m.a11 * cv + m.a12 * cd;
        double ncd = m.a21 * cv + m.a22 * cd;
        double nsv = m.a11 * sv + m.a12 * sd;
        double nsd = m.a21 * sv + m.a22 * sd;
        cv = ncv; cd = ncd; sv = nsv; sd = nsd;
        b.c[static_cast<std::size_t>(i)] = cv;
        b.s[static_cast<std::size_t>(i)] = sv;
    }
    b.c1 = cv; b.c1p = cd; b.s1 = sv; b.s1p = sd;
    return b;
}

EdgeFunction scaled_edge(std::string id, const std::vector<double>& vals,
                         double d0, double d1, double factor) {
    EdgeFunction e;
    e.edge_id = std::move(id);
    e.samples.reserve(vals.size());
    for (double v : vals) e.samples.push_back(factor * v);
    e.d0 = factor * d0;
    e.d1 = factor * d1;
    return e;
}

} // namespace

std::pair<EdgeFunction, Parity> dirichlet_eigenfunction(const Potential& p,
                                                        double lambda_dir,
                                                        int samples,
                                                        double tol) {
    if (samples < 16)
        throw std::invalid_argument("dirichlet_eigenfunction: need >= 16 samples");
    BasisSamples b = sample_basis(p, lambda_dir, samples, tol);
    if (std::abs(b.s1) > 1e-4)
        throw std::domain_error(
            "dirichlet_eigenfunction: lambda is not a Dirichlet eigenvalue");
    double sup = 0.0;
    for (double v : b.s) sup = std::max(sup, std::abs(v));
    EdgeFunction psi = scaled_edge("psi", b.s, 1.0, b.s1p, 1.0 / sup);

    double even_dev = 0.0, odd_dev = 0.0;
    const auto n = psi.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        double a = psi.samples[i], r = psi.samples[n - 1 - i];
        even_dev = std::max(even_dev, std::abs(a - r));
        odd_dev = std::max(odd_dev, std::abs(a + r));
    }
    Parity parity = even_dev <= odd_dev ? Parity::Even : Parity::Odd;
    return {psi, parity};
}

namespace {

LoopState build_ring(const Potential& p, double lambda_dir, int n_edges,
                     StateKind kind, double tol) {
    auto [psi, parity] = dirichlet_eigenfunction(p, lambda_dir,
                                                 kDefaultEdgeSamples, tol);
    if (parity == Parity::Even && n_edges % 2 != 0)
        throw NumericError(
            "loop state: alternating signs cannot close on an odd ring",
            lambda_dir);
    LoopState st;
    st.kind = kind;
    st.lambda = lambda_dir;
    st.parity = parity;
    for (int i = 0; i < n_edges; ++i) {
        double sign = (parity == Parity::Even && i % 2 == 1) ? -1.0 : 1.0;
        st.edges.push_back(scaled_edge("ring_" + std::to_string(i), psi.samples,
                                       psi.d0, psi.d1, sign));
    }
    for (int i = 0; i < n_edges; ++i) {
        VertexJoin v;
        v.ports = {{i, 0}, {(i + n_edges - 1) % n_edges, 1}};
        v.has_off_support_edge = true; // third lattice edge carries zero
        st.joins.push_back(v);
    }
    return st;
}

} // namespace

LoopState build_hexagon_loop(const Potential& p, double lambda_dir, double tol) {
    return build_ring(p, lambda_dir, 6, StateKind::Hexagon, tol);
}

LoopState build_tube_loop(const Potential& p, double lambda_dir, int N,
                          double tol) {
    if (N < 1) throw std::domain_error("build_tube_loop: N must be >= 1");
    return build_ring(p, lambda_dir, 2 * N, StateKind::TubeLoop, tol);
}

LoopState build_dumbbell(const Potential& p, double lambda_dir, bool full,
                         double tol) {
    auto [psi, parity] = dirichlet_eigenfunction(p, lambda_dir,
                                                 kDefaultEdgeSamples, tol);
    LoopState st;
    st.lambda = lambda_dir;
    st.parity = parity;
    st.kind = full ? StateKind::DumbbellFull : StateKind::DumbbellBead;

    // A bead is two parallel edges between the same pair of vertices; the
    // state (psi, -psi) balances flux for either parity.
    auto push_bead = [&](const std::string& tag) {
        st.edges.push_back(scaled_edge(tag + "_0", psi.samples, psi.d0, psi.d1, 1.0));
        st.edges.push_back(scaled_edge(tag + "_1", psi.samples, psi.d0, psi.d1, -1.0));
    };
    push_bead("bead_a");
    if (!full) {
        st.joins.push_back({{{0, 0}, {1, 0}}, true});
        st.joins.push_back({{{0, 1}, {1, 1}}, true});
        return st;
    }
    // Whole dumbbell: both beads of the hexagon image.  Flux balance at the
    // bead vertices forces the connecting link to carry the zero function,
    // matching the pushforward of the hexagon loop state.
    EdgeFunction link;
    link.edge_id = "link";
    link.samples.assign(psi.samples.size(), 0.0);
    st.edges.push_back(link); // index 2
    double mirror = parity == Parity::Even ? -1.0 : 1.0;
    st.edges.push_back(scaled_edge("bead_b_0", psi.samples, psi.d0, psi.d1, mirror));
    st.edges.push_back(scaled_edge("bead_b_1", psi.samples, psi.d0, psi.d1, -mirror));
    st.joins.push_back({{{0, 0}, {1, 0}}, true});                   // u1
    st.joins.push_back({{{0, 1}, {1, 1}, {2, 0}}, false});          // v1
    st.joins.push_back({{{2, 1}, {3, 0}, {4, 0}}, false});          // u2
    st.joins.push_back({{{3, 1}, {4, 1}}, true});                   // v2
    return st;
}

ThreeLeafState build_three_leaf(const Potential& p, double lambda_xi, int sign,
                                double tol) {
    if (sign != +1 && sign != -1)
        throw std::domain_error("build_three_leaf: sign must be +1 or -1");
    BasisSamples b = sample_basis(p, lambda_xi, kDefaultEdgeSamples, tol);
    if (std::abs(b.s1) < 1e-6)
        throw NumericError(
            "build_three_leaf: lambda too close to the Dirichlet spectrum",
            lambda_xi);
    double eta = 0.5 * (b.c1 + b.s1p);
    if (std::abs(eta - sign / 3.0) > 0.05)
        throw std::domain_error(
            "build_three_leaf: eta(lambda) does not match the requested sign");

    // phi1 = s / s(1), phi0 = c - c(1) * phi1.
    std::vector<double> phi1(b.s.size()), bridge(b.s.size());
    for (std::size_t i = 0; i < b.s.size(); ++i) {
        phi1[i] = b.s[i] / b.s1;
        double phi0 = b.c[i] - b.c1 * phi1[i];
        bridge[i] = phi0 + sign * phi1[i];
    }
    double phi1_d0 = 1.0 / b.s1;
    double phi1_d1 = b.s1p / b.s1;
    double phi0_d0 = -b.c1 / b.s1; // c'(0) = 0
    double phi0_d1 = b.c1p - b.c1 * b.s1p / b.s1;

    ThreeLeafState st;
    st.kind = StateKind::ThreeLeaf;
    st.lambda = lambda_xi;
    st.sign = sign;
    st.edges.push_back(scaled_edge("horn_a_0", phi1, phi1_d0, phi1_d1, 1.0));
    st.edges.push_back(scaled_edge("horn_a_1", phi1, phi1_d0, phi1_d1, 1.0));
    {
        EdgeFunction e;
        e.edge_id = "bridge";
        e.samples = bridge;
        e.d0 = phi0_d0 + sign * phi1_d0;
        e.d1 = phi0_d1 + sign * phi1_d1;
        st.edges.push_back(e);
    }
    st.edges.push_back(scaled_edge("horn_b_0", phi1, phi1_d0, phi1_d1,
                                   static_cast<double>(sign)));
    st.edges.push_back(scaled_edge("horn_b_1", phi1, phi1_d0, phi1_d1,
                                   static_cast<double>(sign)));
    // Horns end at a (param 1); the bridge runs a -> b.  The horn tips are
    // matched by the alternating-sign copy above/below and are not joined
    // here.
    st.joins.push_back({{{0, 1}, {1, 1}, {2, 0}}, false}); // vertex a
    st.joins.push_back({{{2, 1}, {3, 1}, {4, 1}}, false}); // vertex b
    return st;
}

VerifyReport verify_state(const GraphState& state, const Potential& p,
                          double tol) {
    VerifyReport r;
    double sup = 0.0;
    for (const auto& e : state.edges)
        for (double v : e.samples) sup = std::max(sup, std::abs(v));
    if (sup == 0.0) sup = 1.0;

    for (const auto& j : state.joins) {
        double vmin = 0.0, vmax = 0.0, aabs = 0.0;
        bool first = true;
        double out_flux = 0.0;
        for (auto [ei, end] : j.ports) {
            const auto& e = state.edges[static_cast<std::size_t>(ei)];
            double v = end == 0 ? e.value0() : e.value1();
            double f = end == 0 ? e.d0 : -e.d1;
            if (first) { vmin = vmax = v; first = false; }
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            aabs = std::max(aabs, std::abs(v));
            out_flux += f;
        }
        double mism = vmax - vmin;
        if (j.has_off_support_edge) mism = std::max(mism, aabs);
        r.vertex_residual = std::max(r.vertex_residual, mism / sup);
        r.flux_residual = std::max(r.flux_residual, std::abs(out_flux) / sup);
    }

    // Eigen-equation residual via a 7-point interior stencil.
    static const double w[7] = {1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0,
                                1.5, -3.0 / 20.0, 1.0 / 90.0};
    for (const auto& e : state.edges) {
        const auto n = e.samples.size();
        if (n < 8) continue;
        double h = 1.0 / static_cast<double>(n - 1);
        for (std::size_t i = 3; i + 3 < n; ++i) {
            double upp = 0.0;
            for (int k = -3; k <= 3; ++k)
                upp += w[k + 3] * e.samples[i + static_cast<std::size_t>(k + 3) - 3];
            upp /= h * h;
            double x = static_cast<double>(i) * h;
            double res = -upp + (p(x) - state.lambda) * e.samples[i];
            r.eigen_residual = std::max(r.eigen_residual, std::abs(res) / sup);
        }
    }
    r.pass = r.vertex_residual < tol && r.flux_residual < tol &&
             r.eigen_residual < tol;
    return r;
}

} // namespace hexband
