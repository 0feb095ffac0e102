#pragma once
#include <vector>

#include "hexband/hill.hpp"

namespace hexband {

enum class Exec { Serial, Parallel };

/// Monodromy data for a batch of spectral values.  The parallel variant
/// distributes points across OpenMP threads; output ordering matches the
/// input ordering exactly in both modes.
std::vector<MonodromyData> sweep_monodromy(const Potential& p,
                                           const std::vector<double>& lambdas,
                                           double tol, Exec exec);

} // namespace hexband
