#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"
#include "polysig/specfun.hpp"

/// Error-theory calculators for the polynomial approximation scheme and the
/// MAPE accuracy metric.
namespace polysig::analysis {

struct BoundParams {
    double k_max = 0.0;  ///< K >= sup |<x', y'>| over the grid
    double delta = 0.0;  ///< largest rectangle side
    int order = 2;
    std::size_t lx = 1;
    std::size_t ly = 1;
};

/// K = max |C_ij| and delta = max side length for a pair of paths.
inline BoundParams bound_params(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, int order) {
    BoundParams bp{0.0, 0.0, order, x.segments(), y.segments()};
    for (std::size_t i = 0; i < x.segments(); ++i) bp.delta = std::max(bp.delta, x.step(i));
    for (std::size_t j = 0; j < y.segments(); ++j) bp.delta = std::max(bp.delta, y.step(j));
    for (std::size_t i = 0; i < x.segments(); ++i)
        for (std::size_t j = 0; j < y.segments(); ++j) bp.k_max = std::max(bp.k_max, std::abs(rect_coeff(x, y, i, j).c));
    return bp;
}

/// max over both sequences and all n of |(n!)^2 coef_n / (gamma K delta)^n|.
inline double gamma_norm(std::span<const double> p, std::span<const double> q, int gamma, double k_max, double delta) {
    if (gamma < 1) throw InputError("gamma_norm: gamma must be >= 1");
    const double base = static_cast<double>(gamma) * k_max * delta;
    double norm = 0.0;
    for (auto seq : {p, q}) {
        if (seq.empty()) continue;
        norm = std::max(norm, std::abs(seq[0]));
        for (std::size_t n = 1; n < seq.size(); ++n) {
            if (seq[n] == 0.0) continue;
            if (!(base > 0.0))
                throw InputError("gamma_norm: undefined for K*delta = 0 with non-constant coefficients");
            const double nn = static_cast<double>(n);
            const double lg = std::log(std::abs(seq[n])) + 2.0 * std::lgamma(nn + 1.0) - nn * std::log(base);
            norm = std::max(norm, std::exp(lg));
        }
    }
    return norm;
}

inline double log_f_factor(std::size_t k, double k_max, double delta) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= k; ++m) acc += log_bessel_i0(2.0 * std::sqrt(static_cast<double>(m) * k_max) * delta);
    return acc;
}

/// f(k) = prod_{m=0}^{k} I0(2 sqrt(m K) delta).
inline double f_factor(std::size_t k, double k_max, double delta) { return std::exp(log_f_factor(k, k_max, delta)); }

/// Global truncation error bound of the order-N polynomial approximation scheme.
inline double gte_bound(const BoundParams& bp) {
    if (bp.order < 2) throw InputError("gte_bound: order must be >= 2");
    if (bp.lx < 1 || bp.ly < 1) throw InputError("gte_bound: grid must have at least one rectangle");
    if (!(bp.k_max >= 0.0) || !(bp.delta > 0.0) || !std::isfinite(bp.k_max) || !std::isfinite(bp.delta))
        throw InputError("gte_bound: K must be >= 0 and delta > 0, both finite");
    if (bp.k_max == 0.0) return 0.0;
    const double n1 = bp.order + 1.0;
    const double len = static_cast<double>(bp.lx + bp.ly - 1);
    // log[(L^{N+2}/(N+2) + L^{N+1})] = (N+1) log L + log(L/(N+2) + 1)
    const double log_poly = n1 * std::log(len) + std::log(len / (n1 + 1.0) + 1.0);
    const double lg = log_f_factor(bp.lx + bp.ly - 1, bp.k_max, bp.delta) +
                      n1 * std::log(bp.k_max * bp.delta * bp.delta) - 2.0 * std::lgamma(n1 + 1.0) + log_poly;
    return std::exp(lg);
}

/// Local truncation error bound for one rectangle with incoming norm ||(p, q)||_gamma.
inline double lte_bound(double norm_pq, int gamma, double c_abs, double delta, int order) {
    if (order < 2) throw InputError("lte_bound: order must be >= 2");
    if (gamma < 1) throw InputError("lte_bound: gamma must be >= 1");
    if (c_abs == 0.0 || norm_pq == 0.0) return 0.0;
    const double g = gamma;
    const double n1 = order + 1.0;
    const double lg = std::log(2.0 * norm_pq) + log_bessel_i0(2.0 * std::sqrt(g * c_abs) * delta) +
                      log_bessel_i0(2.0 * std::sqrt((g + 1.0) * c_abs) * delta) +
                      n1 * std::log((g + 1.0) * c_abs * delta * delta) - 2.0 * std::lgamma(n1 + 1.0);
    return std::exp(lg);
}

/// Mean absolute percentage error as a fraction: mean |est - ref| / |ref|.
inline double mape(std::span<const double> estimates, std::span<const double> reference) {
    if (estimates.size() != reference.size()) throw InputError("mape: length mismatch");
    if (reference.empty()) throw InputError("mape: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i] == 0.0) throw InputError("mape: zero reference entry at index " + std::to_string(i));
        acc += std::abs(estimates[i] - reference[i]) / std::abs(reference[i]);
    }
    return acc / static_cast<double>(reference.size());
}

}  // namespace polysig::analysis
