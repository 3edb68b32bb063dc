#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"
#include "polysig/specfun.hpp"
#include "polysig/wavefront.hpp"

/// Order-N polynomial approximation scheme: edge power series are propagated
/// rectangle by rectangle and truncated at degree N.
namespace polysig::polyapprox {

/// Bottom-edge (p) and left-edge (q) polynomial coefficients of one rectangle,
/// in the local variables s - s_i and t - t_j. p[0] == q[0] is the corner value.
struct EdgeCoefficients {
    std::vector<double> p;
    std::vector<double> q;
};

struct Config {
    int order = 8;
    bool return_grid = false;  ///< also emit every grid corner value
    unsigned workers = 1;      ///< anti-diagonal parallelism inside one solve
};

struct Result {
    double value = 0.0;
    /// (segments(x)+1) x (segments(y)+1) corner values, row index i over x.
    /// Empty unless Config::return_grid.
    std::vector<double> grid;
};

/// Horner evaluation of sum_n coeffs[n] u^n.
inline double eval_poly(std::span<const double> coeffs, double u) {
    double acc = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 0;) acc = acc * u + coeffs[n];
    return acc;
}

/// Writes the top-edge coefficients into p_out and the right-edge ones into
/// q_out. Outputs may alias the inputs.
inline void propagate(std::span<const double> p, std::span<const double> q, const RectangleCoefficient& r,
                      const CoeffTables& tables, std::span<double> p_out, std::span<double> q_out) {
    const int order = tables.order();
    const std::size_t w = static_cast<std::size_t>(order) + 1;
    std::array<double, CoeffTables::kMaxOrder + 1> pow_cdt{}, pow_cds{}, qd{}, pd{}, np{}, nq{};

    // Running products: (c dt)^m, (c ds)^m, q_k dt^k, p_k ds^k.
    const double cdt = r.c * r.dt;
    const double cds = r.c * r.ds;
    pow_cdt[0] = pow_cds[0] = 1.0;
    double dtk = 1.0, dsk = 1.0;
    for (std::size_t m = 1; m < w; ++m) {
        pow_cdt[m] = pow_cdt[m - 1] * cdt;
        pow_cds[m] = pow_cds[m - 1] * cds;
        dtk *= r.dt;
        dsk *= r.ds;
        qd[m] = q[m] * dtk;
        pd[m] = p[m] * dsk;
    }

    for (int n = 0; n <= order; ++n) {
        const double* a = tables.a_row(n);
        const double* b = tables.b_row(n);
        double sp = 0.0, sq = 0.0;
        for (int k = 0; k <= n; ++k) {
            sp += p[k] * a[k] * pow_cdt[n - k];
            sq += q[k] * a[k] * pow_cds[n - k];
        }
        double tp = 0.0, tq = 0.0;
        for (int k = 1; k <= order; ++k) {
            tp += b[k] * qd[k];
            tq += b[k] * pd[k];
        }
        np[n] = sp + pow_cdt[n] * tp;
        nq[n] = sq + pow_cds[n] * tq;
    }
    for (std::size_t n = 0; n < w; ++n) {
        p_out[n] = np[n];
        q_out[n] = nq[n];
    }
}

/// One application of the truncated edge operator on a single rectangle.
inline EdgeCoefficients lambda_step(const EdgeCoefficients& e, const RectangleCoefficient& r,
                                    const CoeffTables& tables) {
    const std::size_t w = static_cast<std::size_t>(tables.order()) + 1;
    if (e.p.size() != w || e.q.size() != w)
        throw InputError("edge coefficients have length " + std::to_string(e.p.size()) + "/" +
                         std::to_string(e.q.size()) + ", expected " + std::to_string(w));
    if (!(r.ds > 0.0) || !(r.dt > 0.0)) throw InputError("rectangle sides must be positive");
    EdgeCoefficients out{std::vector<double>(w), std::vector<double>(w)};
    propagate(e.p, e.q, r, tables, out.p, out.q);
    return out;
}

/// Runs the truncated recursion over the whole grid and calls
/// visit(i, j, p_top, q_right) after cell (i, j) is computed.
///
/// Edge state is one p-vector per x-segment and one q-vector per y-segment,
/// updated in place: cell (i, j) consumes p[i], q[j] and overwrites them with
/// its top and right edges. After the sweep p[lx-1] is the top edge of the last
/// column and q[ly-1] the right edge of the last row.
template <class Visitor>
void sweep(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const CoeffTables& tables,
           unsigned workers, std::vector<double>& p_edges, std::vector<double>& q_edges, Visitor&& visit) {
    if (x.dim() != y.dim())
        throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    const std::size_t lx = x.segments(), ly = y.segments(), d = x.dim();
    const std::size_t w = static_cast<std::size_t>(tables.order()) + 1;
    p_edges.assign(lx * w, 0.0);
    q_edges.assign(ly * w, 0.0);
    for (std::size_t i = 0; i < lx; ++i) p_edges[i * w] = 1.0;
    for (std::size_t j = 0; j < ly; ++j) q_edges[j * w] = 1.0;
    const std::vector<double> dx = x.increments();
    const std::vector<double> dy = y.increments();

    sweep_grid(lx, ly, workers, [&](std::size_t i, std::size_t j) {
        const auto r = rect_coeff(std::span(dx).subspan(i * d, d), x.step(i), std::span(dy).subspan(j * d, d),
                                  y.step(j));
        std::span<double> p(p_edges.data() + i * w, w);
        std::span<double> q(q_edges.data() + j * w, w);
        propagate(p, q, r, tables, p, q);
        visit(i, j, std::span<const double>(p), std::span<const double>(q));
    });
}

inline Result solve(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const CoeffTables& tables,
                    const Config& cfg) {
    if (cfg.order != tables.order()) throw InputError("config order does not match coefficient tables");
    const std::size_t lx = x.segments(), ly = y.segments();
    const std::size_t w = static_cast<std::size_t>(tables.order()) + 1;
    Result res;
    std::vector<double> p_edges, q_edges;
    if (cfg.return_grid) {
        res.grid.assign((lx + 1) * (ly + 1), 1.0);
        sweep(x, y, tables, cfg.workers, p_edges, q_edges,
              [&](std::size_t i, std::size_t j, std::span<const double> p, std::span<const double> q) {
                  res.grid[(i + 1) * (ly + 1) + (j + 1)] =
                      0.5 * (eval_poly(p, x.step(i)) + eval_poly(q, y.step(j)));
              });
    } else {
        sweep(x, y, tables, cfg.workers, p_edges, q_edges,
              [](std::size_t, std::size_t, std::span<const double>, std::span<const double>) {});
    }
    const std::span<const double> p_last(p_edges.data() + (lx - 1) * w, w);
    const std::span<const double> q_last(q_edges.data() + (ly - 1) * w, w);
    res.value = 0.5 * (eval_poly(p_last, x.step(lx - 1)) + eval_poly(q_last, y.step(ly - 1)));
    return res;
}

inline Result solve(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const Config& cfg = {}) {
    return solve(x, y, CoeffTables(cfg.order), cfg);
}

inline double kernel(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, int order = 8) {
    return solve(x, y, Config{.order = order}).value;
}

}  // namespace polysig::polyapprox
