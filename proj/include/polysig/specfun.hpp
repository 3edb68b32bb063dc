#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "polysig/error.hpp"

namespace polysig {

/// Modified Bessel function I0 by its power series sum_k (z/2)^{2k} / (k!)^2.
/// All terms are positive; they are added smallest first once the tail is below
/// rounding, which keeps the result within an ulp or so.
inline double bessel_i0(double z) {
    if (!std::isfinite(z)) throw InputError("bessel_i0: argument is not finite");
    const double q = 0.25 * z * z;
    std::vector<double> terms{1.0};
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        terms.push_back(term);
        sum += term;
        if (!std::isfinite(sum)) break;
        if (term <= std::numeric_limits<double>::epsilon() * 0.125 * sum) {
            double acc = 0.0;
            for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc += *it;
            return acc;
        }
    }
    throw ConvergenceError("bessel_i0: series did not converge for z = " + std::to_string(z));
}

/// log I0(z), usable where I0 itself overflows. Log-sum-exp over the series terms.
inline double log_bessel_i0(double z) {
    if (!std::isfinite(z)) throw InputError("log_bessel_i0: argument is not finite");
    const double a = std::abs(z);
    if (a < 100.0) return std::log(bessel_i0(a));
    // Terms peak near k = z/2; sum around the peak relative to it.
    const double lq = 2.0 * std::log(0.5 * a);
    auto log_term = [&](double k) { return k * lq - 2.0 * std::lgamma(k + 1.0); };
    const double kpeak = std::floor(0.5 * a);
    const double lmax = log_term(kpeak);
    double acc = 0.0;
    for (double k = kpeak; k >= 0.0; k -= 1.0) {
        const double r = std::exp(log_term(k) - lmax);
        acc += r;
        if (r < 1e-18) break;
    }
    for (double k = kpeak + 1.0;; k += 1.0) {
        const double r = std::exp(log_term(k) - lmax);
        acc += r;
        if (r < 1e-18) break;
    }
    return lmax + std::log(acc);
}

/// Confluent hypergeometric limit function 0F1(;b;z) = sum_n z^n / ((b)_n n!).
///
/// Negative z (anti-correlated increments) uses the same alternating series.
/// Stops once a term drops below 1e-17 of the running sum; 200 terms at most.
inline double hyp0f1(int b, double z) {
    if (b < 1) throw InputError("hyp0f1: b must be a positive integer");
    if (!std::isfinite(z)) throw InputError("hyp0f1: argument is not finite");
    if (z == 0.0) return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 200; ++n) {
        term *= z / ((static_cast<double>(b) + n) * (n + 1.0));
        sum += term;
        if (!std::isfinite(sum))
            throw ConvergenceError("hyp0f1: series overflows for b = " + std::to_string(b) + ", z = " + std::to_string(z));
        if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hyp0f1: no convergence within 200 terms for b = " + std::to_string(b) +
                           ", z = " + std::to_string(z));
}

/// Factorial-ratio tables of the truncated edge-propagation operator:
///   a(n, k) = k! / ((n-k)! n!)   for k <= n (zero above the diagonal)
///   b(n, k) = k! / ((n+k)! n!)
/// Built from multiplicative recurrences; raw factorials are never formed.
class CoeffTables {
public:
    static constexpr int kMinOrder = 2;
    static constexpr int kMaxOrder = 64;

    explicit CoeffTables(int order) : order_(order) {
        if (order < kMinOrder || order > kMaxOrder)
            throw InputError("coefficient table order must be in [2, 64], got " + std::to_string(order));
        const std::size_t w = static_cast<std::size_t>(order) + 1;
        a_.assign(w * w, 0.0);
        b_.assign(w * w, 0.0);
        for (int n = 0; n <= order; ++n) {
            // a(n, n) = 1, a(n, k-1) = a(n, k) / (k (n - k + 1))
            double v = 1.0;
            at(a_, n, n) = v;
            for (int k = n; k >= 1; --k) {
                v /= static_cast<double>(k) * static_cast<double>(n - k + 1);
                at(a_, n, k - 1) = v;
            }
            // b(n, 0) = a(n, 0) = 1/(n!)^2, b(n, k) = b(n, k-1) * k / (n + k)
            double u = at(a_, n, 0);
            at(b_, n, 0) = u;
            for (int k = 1; k <= order; ++k) {
                u *= static_cast<double>(k) / static_cast<double>(n + k);
                at(b_, n, k) = u;
            }
        }
    }

    int order() const noexcept { return order_; }
    double a(int n, int k) const { return a_[idx(n, k)]; }
    double b(int n, int k) const { return b_[idx(n, k)]; }
    /// Row n of a, entries k = 0..order.
    const double* a_row(int n) const { return a_.data() + idx(n, 0); }
    const double* b_row(int n) const { return b_.data() + idx(n, 0); }

private:
    std::size_t idx(int n, int k) const {
        return static_cast<std::size_t>(n) * (static_cast<std::size_t>(order_) + 1) + static_cast<std::size_t>(k);
    }
    double& at(std::vector<double>& t, int n, int k) { return t[idx(n, k)]; }

    int order_;
    std::vector<double> a_;
    std::vector<double> b_;
};

inline CoeffTables coeff_tables(int order) { return CoeffTables(order); }

}  // namespace polysig
