#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"

/// Explicit finite-difference baselines on a uniformly refined grid.
namespace polysig::finitediff {

enum class Order { first, second };

struct Config {
    Order order = Order::second;
    std::size_t refinement = 1;  ///< each segment is split into this many cells
};

/// One explicit update of the node (s, t) from (s, v), (u, t), (u, v), where
/// inc = <x_s - x_u, y_t - y_v>.
inline double fd_step(double k_sv, double k_ut, double k_uv, double inc, Order order) {
    double k = k_sv + k_ut - k_uv + 0.5 * inc * (k_sv + k_ut);
    if (order == Order::second) k += (1.0 / 12.0) * inc * inc * (k_sv + k_ut + k_uv);
    return k;
}

inline double solve(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const Config& cfg = {}) {
    if (x.dim() != y.dim())
        throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    if (cfg.refinement == 0) throw InputError("refinement factor must be positive");
    const PiecewiseLinearPath xr = refine_path(x, cfg.refinement);
    const PiecewiseLinearPath yr = refine_path(y, cfg.refinement);
    const std::size_t nx = xr.segments(), ny = yr.segments(), d = xr.dim();
    const std::vector<double> dx = xr.increments();
    const std::vector<double> dy = yr.increments();

    // row[i] holds k(s_i, t_j) for the current j; boundary values are 1.
    std::vector<double> row(nx + 1, 1.0);
    for (std::size_t j = 0; j < ny; ++j) {
        const double* yj = dy.data() + j * d;
        double k_uv = row[0];  // k(s_0, t_j)
        double k_ut = 1.0;     // k(s_0, t_{j+1})
        row[0] = 1.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const double* xi = dx.data() + i * d;
            double inc = 0.0;
            for (std::size_t c = 0; c < d; ++c) inc += xi[c] * yj[c];
            const double k_sv = row[i + 1];
            const double k_st = fd_step(k_sv, k_ut, k_uv, inc, cfg.order);
            k_uv = k_sv;
            k_ut = k_st;
            row[i + 1] = k_st;
        }
    }
    return row[nx];
}

}  // namespace polysig::finitediff
