// Timing comparison of the serial and OpenMP kernels.
#include <chrono>
#include <cstdio>
#include <vector>

#include "hexband/graphene.hpp"
#include "hexband/kernels.hpp"

using namespace hexband;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e18;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        f();
        best = std::min(best,
                        std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main() {
    auto p = Potential::cosine(4.0, 2);

    std::vector<double> lambdas;
    for (int i = 0; i < 2000; ++i) lambdas.push_back(-10.0 + 0.1 * i);
    double sweep_s = time_best_of(3, [&] {
        sweep_monodromy(p, lambdas, 1e-10, Exec::Serial);
    });
    double sweep_p = time_best_of(3, [&] {
        sweep_monodromy(p, lambdas, 1e-10, Exec::Parallel);
    });
    std::printf("sweep_monodromy    %5zu points  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx\n",
                lambdas.size(), 1e3 * sweep_s, 1e3 * sweep_p, sweep_s / sweep_p);

    auto bs = band_structure(p, -10.0, 150.0);
    std::vector<int> bands;
    for (std::size_t k = 0; k < bs.bands.size(); ++k)
        if (!bs.bands[k].clipped()) bands.push_back(static_cast<int>(k));
    const int n = 48;
    double surf_s = time_best_of(3, [&] {
        dispersion_surface(bs, n, bands, Exec::Serial);
    });
    double surf_p = time_best_of(3, [&] {
        dispersion_surface(bs, n, bands, Exec::Parallel);
    });
    std::printf("dispersion_surface %3dx%d grid  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx\n",
                n, n, 1e3 * surf_s, 1e3 * surf_p, surf_s / surf_p);
    return 0;
}
