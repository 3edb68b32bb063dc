#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polysig/error.hpp"

namespace polysig {

/// A d-dimensional path, linear between consecutive samples.
///
/// Times are strictly increasing and values are stored row-major, one row of
/// `dim()` coordinates per time stamp. Instances are always valid: the
/// constructor rejects anything that would make a rectangle coefficient
/// undefined (repeated times, non-finite data, fewer than two points).
class PiecewiseLinearPath {
public:
    PiecewiseLinearPath(std::vector<double> times, std::vector<double> values, std::size_t dim)
        : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
        if (dim_ == 0) throw InputError("path dimension must be at least 1");
        if (times_.size() < 2) throw InputError("path needs at least 2 points");
        if (values_.size() != times_.size() * dim_)
            throw InputError("path values do not match times.size() x dim");
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!std::isfinite(times_[i])) throw InputError("path time stamp is not finite");
            if (i > 0 && !(times_[i] > times_[i - 1]))
                throw InputError("path times must be strictly increasing (index " + std::to_string(i) + ")");
        }
        for (double v : values_)
            if (!std::isfinite(v)) throw InputError("path value is not finite");
    }

    std::size_t points() const noexcept { return times_.size(); }
    std::size_t segments() const noexcept { return times_.size() - 1; }
    std::size_t dim() const noexcept { return dim_; }

    double time(std::size_t i) const { return times_[i]; }
    std::span<const double> value(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }

    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Length of segment i in time.
    double step(std::size_t i) const { return times_[i + 1] - times_[i]; }

    /// Increment x_{i+1} - x_i, flattened row-major (segments() x dim()).
    std::vector<double> increments() const {
        std::vector<double> out(segments() * dim_);
        for (std::size_t i = 0; i < segments(); ++i)
            for (std::size_t k = 0; k < dim_; ++k)
                out[i * dim_ + k] = values_[(i + 1) * dim_ + k] - values_[i * dim_ + k];
        return out;
    }

    friend bool operator==(const PiecewiseLinearPath&, const PiecewiseLinearPath&) = default;

private:
    std::vector<double> times_;
    std::vector<double> values_;
    std::size_t dim_;
};

/// `count` equally spaced stamps on [0, 1].
inline std::vector<double> uniform_times(std::size_t count) {
    if (count < 2) throw InputError("need at least 2 time stamps");
    std::vector<double> t(count);
    const double h = 1.0 / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i) * h;
    t.back() = 1.0;
    return t;
}

/// Builds a path from rows of coordinates. An empty `times` means uniform on [0, 1].
inline PiecewiseLinearPath make_path(std::vector<double> times, const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw InputError("path needs at least 2 points");
    const std::size_t dim = rows.front().size();
    if (dim == 0) throw InputError("path dimension must be at least 1");
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        if (r.size() != dim) throw InputError("ragged path rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    if (times.empty()) times = uniform_times(rows.size());
    if (times.size() != rows.size()) throw InputError("times and values have different lengths");
    return {std::move(times), std::move(flat), dim};
}

inline PiecewiseLinearPath make_path(const std::vector<std::vector<double>>& rows) { return make_path({}, rows); }

/// Coefficient of the kernel PDE on one grid rectangle, with the rectangle's side lengths.
struct RectangleCoefficient {
    double c;   ///< <dx_i, dy_j> / (ds dt)
    double ds;
    double dt;
};

namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}
}  // namespace detail

/// Rectangle coefficient from precomputed increments (row-major segments x dim).
inline RectangleCoefficient rect_coeff(std::span<const double> dx, double ds, std::span<const double> dy, double dt) {
    return {detail::dot(dx, dy) / (ds * dt), ds, dt};
}

inline RectangleCoefficient rect_coeff(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, std::size_t i,
                                       std::size_t j) {
    if (x.dim() != y.dim()) throw InputError("paths have different dimensions");
    if (i >= x.segments() || j >= y.segments()) throw InputError("rectangle index out of range");
    const std::size_t d = x.dim();
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k)
        s += (x.value(i + 1)[k] - x.value(i)[k]) * (y.value(j + 1)[k] - y.value(j)[k]);
    const double ds = x.step(i);
    const double dt = y.step(j);
    return {s / (ds * dt), ds, dt};
}

/// Subdivides every segment into `factor` equal pieces. The traced curve is unchanged.
inline PiecewiseLinearPath refine_path(const PiecewiseLinearPath& p, std::size_t factor) {
    if (factor == 0) throw InputError("refinement factor must be positive");
    if (factor == 1) return p;
    const std::size_t d = p.dim();
    const std::size_t n = p.segments() * factor + 1;
    std::vector<double> t(n), v(n * d);
    std::size_t r = 0;
    for (std::size_t i = 0; i < p.segments(); ++i) {
        const double t0 = p.time(i), t1 = p.time(i + 1);
        const auto x0 = p.value(i), x1 = p.value(i + 1);
        for (std::size_t k = 0; k < factor; ++k, ++r) {
            const double w = static_cast<double>(k) / static_cast<double>(factor);
            t[r] = t0 + w * (t1 - t0);
            for (std::size_t c = 0; c < d; ++c) v[r * d + c] = x0[c] + w * (x1[c] - x0[c]);
        }
    }
    t[r] = p.times().back();
    const auto last = p.value(p.points() - 1);
    for (std::size_t c = 0; c < d; ++c) v[r * d + c] = last[c];
    return {std::move(t), std::move(v), d};
}

/// Brownian motion on uniform [0, 1] with `points` samples, started at the origin.
inline PiecewiseLinearPath sample_brownian(std::uint64_t seed, std::size_t points, std::size_t dim) {
    if (points < 2) throw InputError("brownian path needs at least 2 points");
    if (dim == 0) throw InputError("brownian path dimension must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> inc(0.0, std::sqrt(1.0 / static_cast<double>(points - 1)));
    std::vector<double> v(points * dim, 0.0);
    for (std::size_t i = 1; i < points; ++i)
        for (std::size_t c = 0; c < dim; ++c) v[i * dim + c] = v[(i - 1) * dim + c] + inc(rng);
    return {uniform_times(points), std::move(v), dim};
}

/// Pair of 2-d paths x_i = sin(U_i), y_i = cos(V_i) with U_i, V_i i.i.d. standard normal.
inline std::pair<PiecewiseLinearPath, PiecewiseLinearPath> sample_sincos_pair(std::uint64_t seed, std::size_t points) {
    if (points < 2) throw InputError("sin/cos path needs at least 2 points");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> xv(points * 2), yv(points * 2);
    for (double& e : xv) e = std::sin(z(rng));
    for (double& e : yv) e = std::cos(z(rng));
    return {PiecewiseLinearPath(uniform_times(points), std::move(xv), 2),
            PiecewiseLinearPath(uniform_times(points), std::move(yv), 2)};
}

}  // namespace polysig
