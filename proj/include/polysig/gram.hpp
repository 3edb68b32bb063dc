#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"
#include "polysig/sigoracle.hpp"
#include "polysig/solver.hpp"
#include "polysig/wavefront.hpp"

namespace polysig {

using PathBatch = std::vector<PiecewiseLinearPath>;

/// Dense kernel matrix between two path batches, row-major.
struct GramMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    std::string scheme;  ///< description of the solver that produced it

    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

namespace detail {
inline void check_batches(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys) {
    if (xs.empty() || ys.empty()) throw InputError("path batches must be non-empty");
    const std::size_t d = xs.front().dim();
    for (const auto& p : xs)
        if (p.dim() != d) throw InputError("all paths must share one dimension");
    for (const auto& p : ys)
        if (p.dim() != d) throw InputError("all paths must share one dimension");
}

// Fills a Gram matrix from an entry function. When xs and ys are the same
// batch (same storage) only the upper triangle is evaluated and mirrored.
template <class Entry>
GramMatrix fill_gram(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys,
                     unsigned workers, std::string scheme, Entry&& entry) {
    check_batches(xs, ys);
    GramMatrix g{xs.size(), ys.size(), std::vector<double>(xs.size() * ys.size()), std::move(scheme)};
    const bool same = xs.data() == ys.data() && xs.size() == ys.size();
    if (same) {
        const std::size_t n = xs.size();
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        cells.reserve(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
        parallel_for(cells.size(), workers, [&](std::size_t k) {
            const auto [i, j] = cells[k];
            g(i, j) = entry(i, j);
        });
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    } else {
        parallel_for(g.values.size(), workers, [&](std::size_t k) { g.values[k] = entry(k / g.cols, k % g.cols); });
    }
    return g;
}
}  // namespace detail

/// values(i, j) = kernel(xs[i], ys[j]). Pair-level parallelism over `workers`
/// threads; with more than one worker each solve runs single-threaded.
/// Output does not depend on the worker count.
inline GramMatrix gram(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys,
                       const SolverConfig& cfg, unsigned workers = 1) {
    const KernelSolver solver(cfg);
    const unsigned inner = workers > 1 ? 1u : cfg.workers;
    return detail::fill_gram(xs, ys, workers, describe(cfg),
                             [&](std::size_t i, std::size_t j) { return solver(xs[i], ys[j], inner); });
}

/// Gram matrix of the truncated-signature reference kernel. Each signature is
/// computed once; `memory_cap` applies per signature.
inline GramMatrix oracle_gram(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys,
                              int level = sigoracle::kDefaultLevel,
                              std::size_t memory_cap = sigoracle::kDefaultMemoryCap, unsigned workers = 1) {
    detail::check_batches(xs, ys);
    const bool same = xs.data() == ys.data() && xs.size() == ys.size();
    std::vector<sigoracle::TruncatedTensor> sx(xs.size()), sy;
    parallel_for(xs.size(), workers, [&](std::size_t k) { sx[k] = sigoracle::signature(xs[k], level, memory_cap); });
    if (!same) {
        sy.resize(ys.size());
        parallel_for(ys.size(), workers,
                     [&](std::size_t k) { sy[k] = sigoracle::signature(ys[k], level, memory_cap); });
    }
    const auto& right = same ? sx : sy;
    return detail::fill_gram(xs, ys, workers, "oracle level=" + std::to_string(level),
                             [&](std::size_t i, std::size_t j) {
                                 return sigoracle::kernel_from_signatures(sx[i], right[j]);
                             });
}

namespace detail {
// MMD^2 of the split (a, b) of a pooled Gram matrix.
inline double mmd2_indexed(const GramMatrix& pooled, std::span<const std::size_t> a, std::span<const std::size_t> b,
                           bool unbiased) {
    auto block_mean = [&](std::span<const std::size_t> r, std::span<const std::size_t> c, bool skip_diag) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j)
                if (!(skip_diag && i == j)) s += pooled(r[i], c[j]);
        const double count = skip_diag ? static_cast<double>(r.size() * (r.size() - 1))
                                       : static_cast<double>(r.size() * c.size());
        return s / count;
    };
    return block_mean(a, a, unbiased) - 2.0 * block_mean(a, b, false) + block_mean(b, b, unbiased);
}

inline void check_mmd_sizes(std::size_t nx, std::size_t ny, bool unbiased) {
    if (nx == 0 || ny == 0) throw InputError("MMD needs non-empty batches");
    if (unbiased && (nx < 2 || ny < 2)) throw InputError("unbiased MMD needs at least 2 paths per batch");
}

inline PathBatch pool(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys) {
    PathBatch z(xs.begin(), xs.end());
    z.insert(z.end(), ys.begin(), ys.end());
    return z;
}
}  // namespace detail

/// Squared maximum mean discrepancy between two batches.
/// Biased: mean K_XX - 2 mean K_XY + mean K_YY. Unbiased drops the K_XX and
/// K_YY diagonals.
inline double mmd2(std::span<const PiecewiseLinearPath> xs, std::span<const PiecewiseLinearPath> ys,
                   const SolverConfig& cfg, bool unbiased = true, unsigned workers = 1) {
    detail::check_mmd_sizes(xs.size(), ys.size(), unbiased);
    const PathBatch z = detail::pool(xs, ys);
    const GramMatrix g = gram(z, z, cfg, workers);
    std::vector<std::size_t> a(xs.size()), b(ys.size());
    std::iota(a.begin(), a.end(), std::size_t{0});
    std::iota(b.begin(), b.end(), xs.size());
    return detail::mmd2_indexed(g, a, b, unbiased);
}

struct PermutationTestResult {
    double p_value = 1.0;
    double statistic = 0.0;  ///< observed MMD^2
};

/// Permutation two-sample test on MMD^2. The pooled Gram matrix is computed
/// once and re-indexed per permutation; p = (1 + #{perm >= observed}) / (1 + n_perm).
/// Statistics within 1e-12 * mean|K| of the observed value count as ties.
/// For equal batch sizes the biased and unbiased statistics order permutations
/// identically, so the p-value does not depend on the choice.
inline PermutationTestResult permutation_test(std::span<const PiecewiseLinearPath> xs,
                                              std::span<const PiecewiseLinearPath> ys, const SolverConfig& cfg,
                                              std::size_t n_perm, std::uint64_t seed, bool unbiased = true,
                                              unsigned workers = 1) {
    if (n_perm < 1) throw InputError("permutation test needs at least one permutation");
    detail::check_mmd_sizes(xs.size(), ys.size(), unbiased);
    const PathBatch z = detail::pool(xs, ys);
    const GramMatrix g = gram(z, z, cfg, workers);

    std::vector<std::size_t> idx(z.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const std::size_t nx = xs.size();
    auto stat = [&] {
        return detail::mmd2_indexed(g, std::span(idx).first(nx), std::span(idx).subspan(nx), unbiased);
    };
    const double observed = stat();

    double scale = 0.0;
    for (double v : g.values) scale += std::abs(v);
    const double tie = 1e-12 * scale / static_cast<double>(g.values.size());

    std::mt19937_64 rng(seed);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n_perm; ++k) {
        std::shuffle(idx.begin(), idx.end(), rng);
        if (stat() >= observed - tie) ++hits;
    }
    return {static_cast<double>(1 + hits) / static_cast<double>(1 + n_perm), observed};
}

}  // namespace polysig
