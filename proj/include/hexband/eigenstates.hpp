#pragma once
#include <string>
#include <vector>

#include "hexband/hill.hpp"
#include "hexband/potential.hpp"

namespace hexband {

/// Function on a single edge: uniform samples on [0,1] plus the exact
/// endpoint derivatives (in parameter direction) from the integrator.
struct EdgeFunction {
    std::string edge_id;
    std::vector<double> samples;
    double d0 = 0.0, d1 = 0.0; // u'(0), u'(1) along the parameter

    double value0() const { return samples.front(); }
    double value1() const { return samples.back(); }
};

/// Vertex shared by several edge endpoints; end 0 means the edge parameter
/// starts there, end 1 that it terminates there.  Outgoing derivative is
/// +u'(0) at end 0 and -u'(1) at end 1.
struct VertexJoin {
    std::vector<std::pair<int, int>> ports; // (edge index, end)
    // Vertex also touches edges outside the support; continuity then forces
    // the common vertex value to be zero.
    bool has_off_support_edge = false;
};

enum class StateKind { Hexagon, TubeLoop, DumbbellBead, DumbbellFull, ThreeLeaf };
enum class Parity { Even, Odd };

struct GraphState {
    StateKind kind = StateKind::Hexagon;
    double lambda = 0.0;
    Parity parity = Parity::Odd; // loop states only
    int sign = +1;               // three-leaf states only
    std::vector<EdgeFunction> edges;
    std::vector<VertexJoin> joins;
};

using LoopState = GraphState;
using ThreeLeafState = GraphState;

// Odd count so the symmetry point x = 1/2 lands on the sample grid.
constexpr int kDefaultEdgeSamples = 257;

/// Normalized (sup-norm 1) Dirichlet eigenfunction at lambda_dir together
/// with its parity about x = 1/2.  lambda_dir must satisfy |s_lambda(1)| <
/// root tolerance.
std::pair<EdgeFunction, Parity> dirichlet_eigenfunction(
    const Potential& p, double lambda_dir, int samples = kDefaultEdgeSamples,
    double tol = kDefaultTol);

/// Simple loop state on one hexagon: identical copies for odd parity,
/// alternating signs for even parity.
LoopState build_hexagon_loop(const Potential& p, double lambda_dir,
                             double tol = kDefaultTol);

/// Loop around the zig-zag tube T_(0,N): a closed ring of 2N edges.
LoopState build_tube_loop(const Potential& p, double lambda_dir, int N,
                          double tol = kDefaultTol);

/// Necklace tube T_(0,1): state on a single bead (two parallel edges), or on
/// the whole dumbbell image of a hexagon (both beads; flux balance forces the
/// link function to vanish identically).
LoopState build_dumbbell(const Potential& p, double lambda_dir, bool full,
                         double tol = kDefaultTol);

/// Three-leaf state on the Z support at eta(lambda) = sign/3: horns carry
/// phi_1, the bridge phi_0 + sign*phi_1; the alternating-sign period-2
/// vertical extension makes it an eigenfunction of every T_(0,2N).
ThreeLeafState build_three_leaf(const Potential& p, double lambda_xi, int sign,
                                double tol = kDefaultTol);

struct VerifyReport {
    double vertex_residual = 0.0; // max |u(v)| mismatch / off-zero value
    double flux_residual = 0.0;   // max |sum of outgoing derivatives|
    double eigen_residual = 0.0;  // max |-u'' + q u - lambda u| / ||u||_inf
    bool pass = false;
};

VerifyReport verify_state(const GraphState& state, const Potential& p,
                          double tol);

} // namespace hexband
