#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hours_effect {

/// Uniform closed grid [min, max] with `points` nodes.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int points = 2;

    double step() const { return (max - min) / static_cast<double>(points - 1); }
    double at(int i) const { return min + static_cast<double>(i) * step(); }
    int size() const { return points; }

    /// Index of the grid node nearest to x (clamped to the grid).
    int index_near(double x) const {
        if (x <= min) return 0;
        if (x >= max) return points - 1;
        int i = static_cast<int>(std::lround((x - min) / step()));
        if (i < 0) i = 0;
        if (i >= points) i = points - 1;
        return i;
    }

    void validate(const char* name, int min_points = 2) const {
        if (!(std::isfinite(min) && std::isfinite(max)) || !(min < max))
            throw std::invalid_argument(std::string(name) + ": bounds must be finite with min < max");
        if (points < min_points)
            throw std::invalid_argument(std::string(name) + ": needs at least " +
                                        std::to_string(min_points) + " points");
    }
};

struct GridArgmax {
    int i = -1;
    int j = -1;
    double value = -std::numeric_limits<double>::infinity();
};

namespace detail {
struct RowBest {
    int j = -1;
    double value = -std::numeric_limits<double>::infinity();
    bool nonfinite = false;
};

template <class F>
RowBest scan_row(int i, int nj, F&& f) {
    RowBest best;
    for (int j = 0; j < nj; ++j) {
        const double v = f(i, j);
        if (!std::isfinite(v)) {
            best.nonfinite = true;
            continue;
        }
        if (v > best.value) {
            best.value = v;
            best.j = j;
        }
    }
    return best;
}

inline GridArgmax merge_rows(const std::vector<RowBest>& rows) {
    GridArgmax out;
    bool nonfinite = false;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        nonfinite = nonfinite || rows[i].nonfinite;
        if (rows[i].j >= 0 && rows[i].value > out.value) {
            out.value = rows[i].value;
            out.i = i;
            out.j = rows[i].j;
        }
    }
    if (nonfinite)
        throw std::domain_error("grid search: objective is non-finite on the grid");
    if (out.i < 0)
        throw std::domain_error("grid search: empty grid");
    return out;
}
} // namespace detail

/// Exhaustive 2-D argmax, serial reference. Ties resolve to the smallest (i, j)
/// in row-major order. Throws if the objective is non-finite anywhere.
template <class F>
GridArgmax argmax2d_serial(int ni, int nj, F&& f) {
    std::vector<detail::RowBest> rows(static_cast<std::size_t>(ni));
    for (int i = 0; i < ni; ++i)
        rows[static_cast<std::size_t>(i)] = detail::scan_row(i, nj, f);
    return detail::merge_rows(rows);
}

/// OpenMP variant. Rows are scanned independently and merged in row order,
/// so the result is bit-identical to argmax2d_serial for any thread count.
template <class F>
GridArgmax argmax2d(int ni, int nj, F&& f) {
    std::vector<detail::RowBest> rows(static_cast<std::size_t>(ni));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < ni; ++i)
        rows[static_cast<std::size_t>(i)] = detail::scan_row(i, nj, f);
    return detail::merge_rows(rows);
}

/// Evaluate f(k) for k in [0, n) into a vector; parallel, merged by index.
template <class T, class F>
std::vector<T> map_indexed(int n, F&& f) {
    std::vector<T> out(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = f(k);
    return out;
}

} // namespace hours_effect
