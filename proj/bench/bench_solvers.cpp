// Timing comparison between the serial reference kernel and the OpenMP one.

#include <chrono>
#include <cstdio>

#include "hours_effect/grid_search.hpp"
#include "hours_effect/labor_models.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hours_effect;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < reps; ++k) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both kernels run serially\n");
#endif
    std::printf("%-10s %-10s %12s %12s %9s\n", "hours pts", "wage pts", "serial ms",
                "parallel ms", "speedup");

    for (int n : {401, 801, 1601}) {
        MonopsonyParams m;
        m.hours_grid.points = n;
        m.wage_grid.points = 10 * n + 1;
        const auto profit = [&](int i, int j) {
            const double H = m.hours_grid.at(i), w = m.wage_grid.at(j);
            const double E = m.effective_hours(H);
            const double L = m.labor_supply(m.package_value(w, H));
            return m.output_price * m.output(L, E) - w * H * L;
        };

        GridArgmax rs, rp;
        const double ts = time_ms(
            [&] { rs = argmax2d_serial(m.hours_grid.points, m.wage_grid.points, profit); }, 3);
        const double tp =
            time_ms([&] { rp = argmax2d(m.hours_grid.points, m.wage_grid.points, profit); }, 3);

        if (rs.i != rp.i || rs.j != rp.j || rs.value != rp.value) {
            std::printf("MISMATCH at %d points\n", n);
            return 1;
        }
        std::printf("%-10d %-10d %12.2f %12.2f %8.2fx\n", m.hours_grid.points,
                    m.wage_grid.points, ts, tp, ts / tp);
    }
    return 0;
}
