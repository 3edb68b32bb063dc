#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "polysig/error.hpp"
#include "polysig/finitediff.hpp"
#include "polysig/paths.hpp"
#include "polysig/polyapprox.hpp"
#include "polysig/polyinterp.hpp"
#include "polysig/specfun.hpp"

namespace polysig {

enum class Scheme { polyapprox, polyinterp, fd1, fd2 };

inline std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::polyapprox: return "polyapprox";
        case Scheme::polyinterp: return "polyinterp";
        case Scheme::fd1: return "fd1";
        case Scheme::fd2: return "fd2";
    }
    return "unknown";
}

inline Scheme parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::polyapprox, Scheme::polyinterp, Scheme::fd1, Scheme::fd2})
        if (scheme_name(s) == name) return s;
    throw InputError("unknown scheme '" + std::string(name) + "' (expected polyapprox, polyinterp, fd1 or fd2)");
}

inline bool is_finite_difference(Scheme s) { return s == Scheme::fd1 || s == Scheme::fd2; }

struct SolverConfig {
    Scheme scheme = Scheme::polyapprox;
    int order = 8;                ///< polynomial schemes
    std::size_t refinement = 1;   ///< finite-difference schemes
    unsigned workers = 1;         ///< anti-diagonal workers inside one solve

    /// Scheme parameter as reported in benchmark output: order or refinement.
    std::size_t param() const { return is_finite_difference(scheme) ? refinement : static_cast<std::size_t>(order); }
};

inline std::string describe(const SolverConfig& cfg) {
    std::string s(scheme_name(cfg.scheme));
    if (is_finite_difference(cfg.scheme)) return s + " refine=" + std::to_string(cfg.refinement);
    return s + " order=" + std::to_string(cfg.order);
}

/// A configured kernel with its per-order precomputation done once, so it can
/// be applied to many path pairs (and from many threads).
class KernelSolver {
public:
    explicit KernelSolver(const SolverConfig& cfg) : cfg_(cfg) {
        switch (cfg.scheme) {
            case Scheme::polyapprox: tables_.emplace(cfg.order); break;
            case Scheme::polyinterp:
                if (cfg.order < 2 || cfg.order > CoeffTables::kMaxOrder)
                    throw InputError("interpolation order must be in [2, 64], got " + std::to_string(cfg.order));
                interp_.emplace(cfg.order);
                break;
            case Scheme::fd1:
            case Scheme::fd2:
                if (cfg.refinement == 0) throw InputError("refinement factor must be positive");
                break;
        }
    }

    const SolverConfig& config() const noexcept { return cfg_; }

    double operator()(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y) const {
        return (*this)(x, y, cfg_.workers);
    }

    double operator()(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, unsigned workers) const {
        switch (cfg_.scheme) {
            case Scheme::polyapprox:
                return polyapprox::solve(x, y, *tables_, {.order = cfg_.order, .return_grid = false, .workers = workers})
                    .value;
            case Scheme::polyinterp: return polyinterp::solve(x, y, *interp_, workers);
            case Scheme::fd1: return finitediff::solve(x, y, {finitediff::Order::first, cfg_.refinement});
            case Scheme::fd2: return finitediff::solve(x, y, {finitediff::Order::second, cfg_.refinement});
        }
        throw InputError("unknown scheme");
    }

private:
    SolverConfig cfg_;
    std::optional<CoeffTables> tables_;
    std::optional<polyinterp::UnitInterpolator> interp_;
};

inline double kernel(const PiecewiseLinearPath& x, const PiecewiseLinearPath& y, const SolverConfig& cfg = {}) {
    return KernelSolver(cfg)(x, y);
}

}  // namespace polysig
