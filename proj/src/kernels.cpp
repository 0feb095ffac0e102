#include "hexband/kernels.hpp"

#include <optional>
#include <string>

#include "hexband/errors.hpp"

namespace hexband {

std::vector<MonodromyData> sweep_monodromy(const Potential& p,
                                           const std::vector<double>& lambdas,
                                           double tol, Exec exec) {
    const auto n = static_cast<long>(lambdas.size());
    std::vector<MonodromyData> out(lambdas.size());
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = monodromy(p, lambdas[static_cast<std::size_t>(i)], tol);
        return out;
    }
    // Exceptions must not cross the parallel region; capture the first one.
    std::optional<std::pair<std::string, double>> failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                monodromy(p, lambdas[static_cast<std::size_t>(i)], tol);
        } catch (const NumericError& e) {
#pragma omp critical
            if (!failure) failure = {e.what(), e.lambda()};
        }
    }
    if (failure) throw NumericError(failure->first, failure->second);
    return out;
}

} // namespace hexband
