#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "polysig/analysis.hpp"
#include "polysig/error.hpp"
#include "polysig/gram.hpp"
#include "polysig/paths.hpp"
#include "polysig/sigoracle.hpp"
#include "polysig/solver.hpp"

/// Benchmark harnesses behind the bench-mape and bench-time commands.
namespace polysig::bench {

struct Row {
    std::string scheme;
    std::string param;
    double mape = 0.0;     ///< fraction
    double seconds = 0.0;  ///< wall time, > 0
};

inline std::string to_csv(const std::vector<Row>& rows) {
    std::string out = "scheme,param,mape,seconds\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.scheme;
        out += ',';
        out += r.param;
        std::snprintf(buf, sizeof buf, ",%.6e,%.6e\n", r.mape, r.seconds);
        out += buf;
    }
    return out;
}

enum class Generator { brownian, sincos };

inline Generator parse_generator(const std::string& name) {
    if (name == "brownian") return Generator::brownian;
    if (name == "sincos") return Generator::sincos;
    throw InputError("unknown generator '" + name + "' (expected brownian or sincos)");
}

/// Two batches of n paths each. Per-path seeds are drawn from one master stream.
inline std::pair<PathBatch, PathBatch> generate(Generator gen, std::uint64_t seed, std::size_t points, std::size_t n,
                                                std::size_t dim = 2) {
    if (n == 0) throw InputError("batch size must be positive");
    std::mt19937_64 master(seed);
    PathBatch xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    if (gen == Generator::brownian) {
        for (std::size_t k = 0; k < n; ++k) xs.push_back(sample_brownian(master(), points, dim));
        for (std::size_t k = 0; k < n; ++k) ys.push_back(sample_brownian(master(), points, dim));
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            auto [x, y] = sample_sincos_pair(master(), points);
            xs.push_back(std::move(x));
            ys.push_back(std::move(y));
        }
    }
    return {std::move(xs), std::move(ys)};
}

template <class Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return std::max(dt.count(), 1e-9);
}

struct MapeConfig {
    Generator generator = Generator::brownian;
    std::size_t points = 10;
    std::size_t batch = 8;
    std::uint64_t seed = 0;
    std::vector<Scheme> schemes{Scheme::polyapprox, Scheme::polyinterp, Scheme::fd2};
    std::vector<int> orders{2, 4, 6, 8, 10};
    std::vector<std::size_t> refinements{1, 2, 4, 8, 16};
    int oracle_level = sigoracle::kDefaultLevel;
    std::size_t memory_cap = sigoracle::kDefaultMemoryCap;
    unsigned workers = 1;
};

struct MapeReport {
    std::vector<Row> rows;
    double oracle_tail = 0.0;  ///< max relative size of the top-level oracle term
};

/// Gram MAPE of every scheme x parameter against the oracle Gram.
inline MapeReport run_mape(const MapeConfig& cfg) {
    const auto [xs, ys] = generate(cfg.generator, cfg.seed, cfg.points, cfg.batch);
    const std::size_t dim = xs.front().dim();
    sigoracle::check_memory(dim, cfg.oracle_level, cfg.memory_cap, 2);

    std::vector<sigoracle::TruncatedTensor> sx(xs.size()), sy(ys.size());
    parallel_for(xs.size(), cfg.workers, [&](std::size_t k) {
        sx[k] = sigoracle::signature(xs[k], cfg.oracle_level, cfg.memory_cap);
        sy[k] = sigoracle::signature(ys[k], cfg.oracle_level, cfg.memory_cap);
    });
    MapeReport report;
    std::vector<double> ref(xs.size() * ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            ref[i * ys.size() + j] = sigoracle::kernel_from_signatures(sx[i], sy[j]);
            const double tail = std::abs(sigoracle::level_term(sx[i], sy[j], cfg.oracle_level));
            report.oracle_tail = std::max(report.oracle_tail, tail / std::abs(ref[i * ys.size() + j]));
        }

    for (Scheme s : cfg.schemes) {
        std::vector<SolverConfig> configs;
        if (is_finite_difference(s))
            for (std::size_t r : cfg.refinements) configs.push_back({s, 8, r, 1});
        else
            for (int o : cfg.orders) configs.push_back({s, o, 1, 1});
        for (const auto& sc : configs) {
            GramMatrix g;
            const double secs = timed([&] { g = gram(xs, ys, sc, cfg.workers); });
            report.rows.push_back(
                {std::string(scheme_name(s)), std::to_string(sc.param()), analysis::mape(g.values, ref), secs});
        }
    }
    return report;
}

struct TimeConfig {
    SolverConfig solver{};
    std::vector<std::size_t> lengths{64};
    std::vector<std::size_t> dims{2};
    std::vector<unsigned> workers{1};
    std::size_t batch = 8;
    std::uint64_t seed = 0;
    int reference_order = 16;  ///< polyapprox order of the accuracy reference
};

/// Wall time of an n x n Gram on Brownian batches per (length, dim, workers).
/// The mape column compares against a high-order polyapprox Gram, since the
/// signature oracle does not scale to these sizes.
inline std::vector<Row> run_time(const TimeConfig& cfg) {
    const SolverConfig reference{Scheme::polyapprox, cfg.reference_order, 1, 1};
    (void)KernelSolver(cfg.solver);
    std::vector<Row> rows;
    for (std::size_t len : cfg.lengths)
        for (std::size_t d : cfg.dims) {
            const auto [xs, ys] = generate(Generator::brownian, cfg.seed, len, cfg.batch, d);
            const GramMatrix ref = gram(xs, ys, reference, 1);
            for (unsigned w : cfg.workers) {
                if (w == 0) throw InputError("worker count must be positive");
                GramMatrix g;
                const double secs = timed([&] { g = gram(xs, ys, cfg.solver, w); });
                rows.push_back({std::string(scheme_name(cfg.solver.scheme)),
                                "len=" + std::to_string(len) + ";dim=" + std::to_string(d) +
                                    ";workers=" + std::to_string(w) + ";p=" + std::to_string(cfg.solver.param()),
                                analysis::mape(g.values, ref.values), secs});
            }
        }
    return rows;
}

}  // namespace polysig::bench
