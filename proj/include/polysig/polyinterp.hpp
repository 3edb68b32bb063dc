#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"
#include "polysig/polyapprox.hpp"
#include "polysig/specfun.hpp"
#include "polysig/wavefront.hpp"

/// Order-N polynomial interpolation scheme: edge functions are interpolated at
/// Chebyshev extrema and pushed across each rectangle with the closed-form
/// 0F1 solution for polynomial boundary data.
namespace polysig::polyinterp {

struct Config {
    int order = 8;
    unsigned workers = 1;

    int node_count() const noexcept { return order + 1; }
};

/// Polynomial in the local variable u = s - lo, valid on [lo, hi].
struct EdgePolynomial {
    std::vector<double> coeffs;
    double lo = 0.0;
    double hi = 1.0;

    double operator()(double s) const { return polyapprox::eval_poly(coeffs, s - lo); }
};

/// Chebyshev extrema (hi-lo)/2 cos(pi m/(count-1)) + (hi+lo)/2, m = 0..count-1.
/// Descending; the first node is exactly hi and the last exactly lo.
inline std::vector<double> chebyshev_nodes(double lo, double hi, int count) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InputError("chebyshev_nodes: degenerate interval");
    if (count < 2) throw InputError("chebyshev_nodes: need at least 2 nodes");
    const int n = count - 1;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    std::vector<double> nodes(static_cast<std::size_t>(count));
    for (int m = 0; m <= n; ++m) {
        // cos(pi m / n) written as sin(pi (n - 2m) / (2n)): exact zero and symmetry.
        const double c = std::sin(std::numbers::pi * static_cast<double>(n - 2 * m) / (2.0 * n));
        nodes[static_cast<std::size_t>(m)] = half * c + mid;
    }
    nodes.front() = hi;
    nodes.back() = lo;
    return nodes;
}

/// Degree-(nodes.size()-1) interpolant through (nodes, samples), in monomials of u = s - lo.
///
/// The Vandermonde system is assembled in u / scale with scale = max |node - lo|,
/// solved by partially pivoted LU, then rescaled.
inline EdgePolynomial fit_polynomial(std::span<const double> nodes, std::span<const double> samples, double lo) {
    if (nodes.size() != samples.size()) throw InputError("fit_polynomial: nodes and samples differ in length");
    if (nodes.empty()) throw InputError("fit_polynomial: no nodes");
    const std::size_t m = nodes.size();
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("fit_polynomial: duplicate nodes");

    double scale = 0.0;
    for (double s : nodes) scale = std::max(scale, std::abs(s - lo));
    if (scale == 0.0) scale = 1.0;

    Eigen::MatrixXd vander(m, m);
    Eigen::VectorXd rhs(m);
    for (std::size_t r = 0; r < m; ++r) {
        const double v = (nodes[r] - lo) / scale;
        double pw = 1.0;
        for (std::size_t c = 0; c < m; ++c, pw *= v) vander(r, c) = pw;
        rhs(r) = samples[r];
    }
    const Eigen::VectorXd alpha = vander.partialPivLu().solve(rhs);

    EdgePolynomial poly;
    poly.lo = lo;
    poly.hi = std::max(lo, sorted.back());
    poly.coeffs.resize(m);
    double inv = 1.0;
    for (std::size_t n = 0; n < m; ++n, inv /= scale) poly.coeffs[n] = alpha(static_cast<Eigen::Index>(n)) * inv;

    double peak = 0.0;
    for (double s : samples) peak = std::max(peak, std::abs(s));
    const double tol = 1e-12 * std::max(peak, std::numeric_limits<double>::min());
    for (std::size_t r = 0; r < m; ++r) {
        const double resid = std::abs(polyapprox::eval_poly(poly.coeffs, nodes[r] - lo) - samples[r]);
        if (!(resid <= tol))
            throw InputError("fit_polynomial: ill-conditioned fit, residual " + std::to_string(resid) +
                             " exceeds tolerance");
    }
    return poly;
}

namespace detail {
// Closed-form solution on one rectangle for polynomial boundary data, at local
// offsets (s, t). The I0 factor is 0F1(1; z), so negative c needs no special case.
inline double phi(std::span<const double> g, std::span<const double> h, double c, double s, double t) {
    const double z = c * s * t;
    double acc = g[0] * hyp0f1(1, z);
    double sp = 1.0, tp = 1.0;
    for (std::size_t n = 1; n < g.size(); ++n) {
        sp *= s;
        tp *= t;
        acc += (g[n] * sp + h[n] * tp) * hyp0f1(static_cast<int>(n) + 1, z);
    }
    return acc;
}
}  // namespace detail

/// Solution at offsets (s_off, t_off) inside rectangle r, given bottom edge g
/// and left edge h as polynomials in their local variables.
inline double phi_eval(const EdgePolynomial& g, const EdgePolynomial& h, const RectangleCoefficient& r,
                       double s_off, double t_off) {
    if (g.coeffs.empty() || g.coeffs.size() != h.coeffs.size())
        throw InputError("phi_eval: edge polynomials must be non-empty and of equal degree");
    const double g0 = g.coeffs[0], h0 = h.coeffs[0];
    if (std::abs(g0 - h0) > 1e-10 * std::max(1.0, std::abs(g0)))
        throw InputError("phi_eval: edge polynomials disagree at the shared corner");
    if (s_off < 0.0 || s_off > r.ds || t_off < 0.0 || t_off > r.dt)
        throw InputError("phi_eval: offsets outside the rectangle");
    return detail::phi(g.coeffs, h.coeffs, r.c, s_off, t_off);
}

/// Interpolation on the Chebyshev extrema of [0, 1] with a factorization reused
/// for every rectangle; only the width rescaling differs between edges.
class UnitInterpolator {
public:
    explicit UnitInterpolator(int order) : order_(order), nodes_(chebyshev_nodes(0.0, 1.0, order + 1)) {
        const auto m = static_cast<Eigen::Index>(nodes_.size());
        Eigen::MatrixXd vander(m, m);
        for (Eigen::Index r = 0; r < m; ++r) {
            double pw = 1.0;
            for (Eigen::Index c = 0; c < m; ++c, pw *= nodes_[static_cast<std::size_t>(r)]) vander(r, c) = pw;
        }
        lu_ = vander.partialPivLu();
    }

    int order() const noexcept { return order_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

    /// Coefficients in u in [0, width] of the interpolant through samples at nodes()*width.
    void fit(std::span<const double> samples, double width, std::span<double> coeffs) const {
        const Eigen::Map<const Eigen::VectorXd> rhs(samples.data(), static_cast<Eigen::Index>(samples.size()));
        const Eigen::VectorXd alpha = lu_.solve(rhs);
        double inv = 1.0;
        for (std::size_t n = 0; n < coeffs.size(); ++n, inv /= width)
            coeffs[n] = alpha(static_cast<Eigen::Index>(n)) * inv;
    }

private:
    int order_;
    std::vector<double> nodes_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Runs the scheme with a prebuilt interpolator; its order sets the scheme order.
inline double solve(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const UnitInterpolator& interp,
                    unsigned workers = 1) {
    if (x.dim() != y.dim())
        throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    const auto& unit = interp.nodes();
    const std::size_t lx = x.segments(), ly = y.segments(), d = x.dim();
    const std::size_t w = unit.size();

    // Edge samples at the scaled Chebyshev extrema: bottom edges per x-segment,
    // left edges per y-segment, overwritten in place as the sweep advances.
    std::vector<double> bottom(lx * w, 1.0), left(ly * w, 1.0);
    const std::vector<double> dx = x.increments();
    const std::vector<double> dy = y.increments();

    sweep_grid(lx, ly, workers, [&](std::size_t i, std::size_t j) {
        const auto r = rect_coeff(std::span(dx).subspan(i * d, d), x.step(i), std::span(dy).subspan(j * d, d),
                                  y.step(j));
        std::vector<double> g(w), h(w);
        std::span<double> sb(bottom.data() + i * w, w);
        std::span<double> sl(left.data() + j * w, w);
        interp.fit(sb, r.ds, g);
        interp.fit(sl, r.dt, h);
        for (std::size_t m = 0; m < w; ++m) {
            sb[m] = detail::phi(g, h, r.c, unit[m] * r.ds, r.dt);
            sl[m] = detail::phi(g, h, r.c, r.ds, unit[m] * r.dt);
        }
    });
    // Node 0 is the far end of each edge.
    return 0.5 * (bottom[(lx - 1) * w] + left[(ly - 1) * w]);
}

inline double solve(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const Config& cfg = {}) {
    if (cfg.order < 2 || cfg.order > CoeffTables::kMaxOrder)
        throw InputError("interpolation order must be in [2, 64], got " + std::to_string(cfg.order));
    return solve(x, y, UnitInterpolator(cfg.order), cfg.workers);
}

}  // namespace polysig::polyinterp
