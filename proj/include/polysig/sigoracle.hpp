#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "polysig/error.hpp"
#include "polysig/paths.hpp"

/// Reference kernel from explicit truncated signatures in the tensor algebra.
namespace polysig::sigoracle {

inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 30;  // 1 GiB
inline constexpr int kDefaultLevel = 18;

/// Element of the truncated tensor algebra T_M(R^d). Block k is a dense,
/// row-major d^k tensor; block 0 is the scalar slot.
struct TruncatedTensor {
    int level = 0;
    std::size_t dim = 0;
    std::vector<std::vector<double>> blocks;

    static TruncatedTensor identity(std::size_t dim, int level) {
        TruncatedTensor t{level, dim, {}};
        t.blocks.resize(static_cast<std::size_t>(level) + 1);
        std::size_t sz = 1;
        for (auto& b : t.blocks) {
            b.assign(sz, 0.0);
            sz *= dim;
        }
        t.blocks[0][0] = 1.0;
        return t;
    }
};

/// Bytes occupied by one truncated tensor, saturating at SIZE_MAX.
inline std::size_t tensor_bytes(std::size_t dim, int level) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 0, sz = 1;
    for (int k = 0; k <= level; ++k) {
        if (total > kMax - sz) return kMax;
        total += sz;
        if (k < level) {
            if (dim != 0 && sz > kMax / dim) return kMax;
            sz *= dim;
        }
    }
    return total > kMax / sizeof(double) ? kMax : total * sizeof(double);
}

/// Throws ResourceError when `copies` tensors of this shape exceed the cap.
inline void check_memory(std::size_t dim, int level, std::size_t memory_cap, std::size_t copies = 1) {
    if (level < 0) throw InputError("signature level must be non-negative");
    const std::size_t one = tensor_bytes(dim, level);
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    const std::size_t need = one > kMax / copies ? kMax : one * copies;
    if (need > memory_cap)
        throw ResourceError("signature of dimension " + std::to_string(dim) + " at level " + std::to_string(level) +
                            " needs " + std::to_string(need) + " bytes, above the memory cap of " +
                            std::to_string(memory_cap) + " bytes");
}

/// Signature of one linear segment: block k = delta^{(x)k} / k!.
inline TruncatedTensor segment_signature(std::span<const double> delta, int level,
                                         std::size_t memory_cap = kDefaultMemoryCap) {
    if (delta.empty()) throw InputError("segment increment must have dimension >= 1");
    check_memory(delta.size(), level, memory_cap);
    const std::size_t d = delta.size();
    TruncatedTensor t = TruncatedTensor::identity(d, level);
    for (int k = 1; k <= level; ++k) {
        const auto& prev = t.blocks[static_cast<std::size_t>(k) - 1];
        auto& cur = t.blocks[static_cast<std::size_t>(k)];
        const double inv = 1.0 / static_cast<double>(k);
        for (std::size_t a = 0; a < prev.size(); ++a)
            for (std::size_t b = 0; b < d; ++b) cur[a * d + b] = prev[a] * delta[b] * inv;
    }
    return t;
}

/// Tensor product in T_M: block n = sum_k s1_k (x) s2_{n-k}.
inline TruncatedTensor chen_concat(const TruncatedTensor& s1, const TruncatedTensor& s2) {
    if (s1.level != s2.level || s1.dim != s2.dim) throw InputError("chen_concat: shape mismatch");
    TruncatedTensor out = TruncatedTensor::identity(s1.dim, s1.level);
    out.blocks[0][0] = s1.blocks[0][0] * s2.blocks[0][0];
    for (std::size_t n = 1; n < out.blocks.size(); ++n) {
        auto& dst = out.blocks[n];
        for (std::size_t k = 0; k <= n; ++k) {
            const auto& a = s1.blocks[k];
            const auto& b = s2.blocks[n - k];
            const std::size_t nb = b.size();
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double ai = a[i];
                if (ai == 0.0) continue;
                double* row = dst.data() + i * nb;
                for (std::size_t j = 0; j < nb; ++j) row[j] += ai * b[j];
            }
        }
    }
    return out;
}

namespace detail {
// s <- s (x) exp(delta), in place, highest level first so lower levels are
// still the old values when read. Level n is accumulated Horner-style:
// (((s_0 delta/n + s_1) delta/(n-1) + s_2) ... + s_{n-1}) delta/1 + s_n.
inline void multiply_by_segment(TruncatedTensor& s, std::span<const double> delta, std::vector<double>& a,
                                std::vector<double>& b) {
    const std::size_t d = s.dim;
    for (int n = s.level; n >= 1; --n) {
        a.assign(1, s.blocks[0][0]);
        for (int k = 1; k <= n; ++k) {
            const double inv = 1.0 / static_cast<double>(n - k + 1);
            const auto& sk = s.blocks[static_cast<std::size_t>(k)];
            b.resize(a.size() * d);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double ai = a[i] * inv;
                for (std::size_t c = 0; c < d; ++c) b[i * d + c] = ai * delta[c] + sk[i * d + c];
            }
            a.swap(b);
        }
        s.blocks[static_cast<std::size_t>(n)].swap(a);
    }
}
}  // namespace detail

/// Truncated signature of a piecewise-linear path: Chen products of the
/// segment exponentials, folded left to right.
inline TruncatedTensor signature(const PiecewiseLinearPath& path, int level,
                                 std::size_t memory_cap = kDefaultMemoryCap) {
    // Result plus two scratch blocks of at most the top-level size.
    check_memory(path.dim(), level, memory_cap, 2);
    const std::size_t d = path.dim();
    const std::vector<double> inc = path.increments();
    TruncatedTensor s = segment_signature(std::span(inc).first(d), level, memory_cap);
    std::vector<double> a, b;
    for (std::size_t i = 1; i < path.segments(); ++i) detail::multiply_by_segment(s, std::span(inc).subspan(i * d, d), a, b);
    return s;
}

/// sum_k <block_k(sx), block_k(sy)>.
inline double kernel_from_signatures(const TruncatedTensor& sx, const TruncatedTensor& sy) {
    if (sx.level != sy.level || sx.dim != sy.dim) throw InputError("signature shapes differ");
    double total = 0.0;
    for (std::size_t k = 0; k < sx.blocks.size(); ++k) {
        const auto& a = sx.blocks[k];
        const auto& b = sy.blocks[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        total += acc;
    }
    return total;
}

/// <block_k(sx), block_k(sy)> alone; the top level is a convergence indicator.
inline double level_term(const TruncatedTensor& sx, const TruncatedTensor& sy, int k) {
    if (sx.level != sy.level || sx.dim != sy.dim) throw InputError("signature shapes differ");
    if (k < 0 || k > sx.level) throw InputError("level out of range");
    const auto& a = sx.blocks[static_cast<std::size_t>(k)];
    const auto& b = sy.blocks[static_cast<std::size_t>(k)];
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double truncated_kernel(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, int level = kDefaultLevel,
                               std::size_t memory_cap = kDefaultMemoryCap) {
    if (x.dim() != y.dim())
        throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
    return kernel_from_signatures(signature(x, level, memory_cap), signature(y, level, memory_cap));
}

}  // namespace polysig::sigoracle
