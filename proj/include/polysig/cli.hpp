#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polysig/batch_file.hpp"
#include "polysig/bench.hpp"
#include "polysig/error.hpp"
#include "polysig/gram.hpp"
#include "polysig/solver.hpp"

/// The `polysig` command line, callable in-process for testing.
namespace polysig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

/// 17 significant digits with a bare exponent, e.g. 2.2795853023360673e0.
inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    std::string s(buf);
    const auto e = s.find('e');
    if (e == std::string::npos) return s;
    return s.substr(0, e + 1) + std::to_string(std::stoi(s.substr(e + 1)));
}

namespace detail {

struct SchemeFlags {
    std::string scheme = "polyapprox";
    int order = 8;
    std::size_t refine = 1;
    CLI::Option* order_opt = nullptr;

    void add(CLI::App& app) {
        app.add_option("--scheme", scheme, "polyapprox, polyinterp, fd1 or fd2 (fd with --order 1|2)")
            ->capture_default_str();
        order_opt = app.add_option("--order", order, "polynomial order N")->capture_default_str();
        app.add_option("--refine", refine, "finite-difference refinement factor")->capture_default_str();
    }

    SolverConfig config(unsigned inner_workers = 1) const {
        SolverConfig cfg;
        if (scheme == "fd") {
            const int o = order_opt && order_opt->count() ? order : 2;
            if (o != 1 && o != 2) throw InputError("--scheme fd takes --order 1 or 2, got " + std::to_string(o));
            cfg.scheme = o == 1 ? Scheme::fd1 : Scheme::fd2;
        } else {
            cfg.scheme = parse_scheme(scheme);
        }
        cfg.order = order;
        cfg.refinement = refine;
        cfg.workers = inner_workers;
        (void)KernelSolver(cfg);  // validates order / refinement
        return cfg;
    }
};

inline void write_output(const std::string& text, const std::string& file, std::ostream& out) {
    if (file.empty()) {
        out << text;
        return;
    }
    std::ofstream f(file, std::ios::binary);
    if (!f) throw InputError("cannot write '" + file + "'");
    f << text;
    if (!f) throw InputError("failed writing '" + file + "'");
}

inline std::string gram_csv(const GramMatrix& g) {
    std::string s;
    char buf[40];
    for (std::size_t i = 0; i < g.rows; ++i) {
        for (std::size_t j = 0; j < g.cols; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", g(i, j));
            if (j) s += ',';
            s += buf;
        }
        s += '\n';
    }
    return s;
}

template <class T>
std::vector<T> require_non_empty(std::vector<T> v, const char* what) {
    if (v.empty()) throw InputError(std::string(what) + " list is empty");
    return v;
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name) and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Signature kernels of piecewise-linear paths"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // kernel
    auto* k_cmd = app.add_subcommand("kernel", "kernel of two single-path files");
    std::string k_x, k_y;
    detail::SchemeFlags k_flags;
    unsigned k_workers = 1;
    k_cmd->add_option("x", k_x, "first path (JSON batch of one path, or CSV)")->required();
    k_cmd->add_option("y", k_y, "second path")->required();
    k_flags.add(*k_cmd);
    k_cmd->add_option("--workers", k_workers, "wavefront workers")->check(CLI::PositiveNumber);

    // gram
    auto* g_cmd = app.add_subcommand("gram", "Gram matrix between two batches (or a batch and itself)");
    std::string g_x, g_y, g_out;
    detail::SchemeFlags g_flags;
    unsigned g_workers = 1;
    g_cmd->add_option("x", g_x, "batch file")->required();
    g_cmd->add_option("y", g_y, "second batch file (defaults to x)");
    g_flags.add(*g_cmd);
    g_cmd->add_option("--workers", g_workers, "pair-level workers")->check(CLI::PositiveNumber);
    g_cmd->add_option("--out", g_out, "CSV output file");

    // mmd
    auto* m_cmd = app.add_subcommand("mmd", "squared MMD between two batches");
    std::string m_x, m_y;
    detail::SchemeFlags m_flags;
    unsigned m_workers = 1;
    bool m_biased = false;
    m_cmd->add_option("x", m_x, "batch file")->required();
    m_cmd->add_option("y", m_y, "batch file")->required();
    m_flags.add(*m_cmd);
    m_cmd->add_option("--workers", m_workers, "pair-level workers")->check(CLI::PositiveNumber);
    m_cmd->add_flag("--biased", m_biased, "keep the diagonal terms");

    // permtest
    auto* p_cmd = app.add_subcommand("permtest", "permutation two-sample test on MMD^2");
    std::string p_x, p_y;
    detail::SchemeFlags p_flags;
    unsigned p_workers = 1;
    std::size_t p_nperm = 200;
    std::uint64_t p_seed = 0;
    bool p_biased = false;
    p_cmd->add_option("x", p_x, "batch file")->required();
    p_cmd->add_option("y", p_y, "batch file")->required();
    p_flags.add(*p_cmd);
    p_cmd->add_option("--workers", p_workers, "pair-level workers")->check(CLI::PositiveNumber);
    p_cmd->add_option("--permutations", p_nperm, "number of permutations")->capture_default_str();
    p_cmd->add_option("--seed", p_seed, "permutation seed")->required();
    p_cmd->add_flag("--biased", p_biased, "keep the diagonal terms");

    // bench-mape
    auto* bm_cmd = app.add_subcommand("bench-mape", "Gram MAPE of each scheme against the signature oracle");
    bench::MapeConfig bm;
    std::string bm_gen = "brownian", bm_out;
    std::vector<std::string> bm_schemes{"polyapprox", "polyinterp", "fd2"};
    bm_cmd->add_option("--generator", bm_gen, "brownian or sincos")->capture_default_str();
    bm_cmd->add_option("--points", bm.points, "points per path")->capture_default_str();
    bm_cmd->add_option("--batch", bm.batch, "paths per batch")->capture_default_str();
    bm_cmd->add_option("--schemes", bm_schemes, "schemes to run")->delimiter(',');
    bm_cmd->add_option("--orders", bm.orders, "orders for polynomial schemes")->delimiter(',');
    bm_cmd->add_option("--refines", bm.refinements, "refinement factors for fd schemes")->delimiter(',');
    bm_cmd->add_option("--seed", bm.seed, "generator seed")->required();
    bm_cmd->add_option("--oracle-level", bm.oracle_level, "signature truncation level")->capture_default_str();
    bm_cmd->add_option("--memory-cap", bm.memory_cap, "oracle memory cap in bytes")->capture_default_str();
    bm_cmd->add_option("--workers", bm.workers, "pair-level workers")->check(CLI::PositiveNumber);
    bm_cmd->add_option("--out", bm_out, "CSV output file");

    // bench-time
    auto* bt_cmd = app.add_subcommand("bench-time", "wall time of Gram computation against length, dimension, workers");
    bench::TimeConfig bt;
    detail::SchemeFlags bt_flags;
    std::string bt_out;
    bt_cmd->add_option("--lengths", bt.lengths, "points per path")->delimiter(',');
    bt_cmd->add_option("--dims", bt.dims, "path dimensions")->delimiter(',');
    bt_cmd->add_option("--workers", bt.workers, "pair-level worker counts")->delimiter(',');
    bt_cmd->add_option("--batch", bt.batch, "paths per batch")->capture_default_str();
    bt_cmd->add_option("--seed", bt.seed, "generator seed")->required();
    bt_flags.add(*bt_cmd);
    bt_cmd->add_option("--out", bt_out, "CSV output file");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (k_cmd->parsed()) {
            const auto cfg = k_flags.config(k_workers);
            const auto x = io::load_single_path(k_x);
            const auto y = io::load_single_path(k_y);
            if (x.dim() != y.dim())
                throw InputError("dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
            out << format_full(kernel(x, y, cfg)) << "\n";
        } else if (g_cmd->parsed()) {
            const auto cfg = g_flags.config();
            const PathBatch xs = io::load_batch(g_x);
            const GramMatrix g = g_y.empty() ? gram(xs, xs, cfg, g_workers)
                                             : gram(xs, io::load_batch(g_y), cfg, g_workers);
            detail::write_output(detail::gram_csv(g), g_out, out);
        } else if (m_cmd->parsed()) {
            const auto cfg = m_flags.config();
            out << format_full(mmd2(io::load_batch(m_x), io::load_batch(m_y), cfg, !m_biased, m_workers)) << "\n";
        } else if (p_cmd->parsed()) {
            const auto cfg = p_flags.config();
            const auto r = permutation_test(io::load_batch(p_x), io::load_batch(p_y), cfg, p_nperm, p_seed, !p_biased,
                                            p_workers);
            out << "p_value,statistic\n" << format_full(r.p_value) << "," << format_full(r.statistic) << "\n";
        } else if (bm_cmd->parsed()) {
            bm.generator = bench::parse_generator(bm_gen);
            bm.schemes.clear();
            for (const auto& s : detail::require_non_empty(bm_schemes, "scheme")) bm.schemes.push_back(parse_scheme(s));
            detail::require_non_empty(bm.orders, "order");
            detail::require_non_empty(bm.refinements, "refinement");
            for (int o : bm.orders)
                if (o < 2 || o > CoeffTables::kMaxOrder)
                    throw InputError("order must be in [2, 64], got " + std::to_string(o));
            for (auto r : bm.refinements)
                if (r == 0) throw InputError("refinement factor must be positive");
            const auto report = bench::run_mape(bm);
            if (report.oracle_tail > 1e-15)
                err << "warning: oracle level " << bm.oracle_level
                    << " may be unconverged (top-level term up to " << report.oracle_tail
                    << " of the kernel); raise --oracle-level\n";
            detail::write_output(bench::to_csv(report.rows), bm_out, out);
            if (!bm_out.empty()) {
                char buf[160];
                for (const auto& r : report.rows) {
                    std::snprintf(buf, sizeof buf, "%-10s %-6s mape %.3e %%  %.3f s\n", r.scheme.c_str(),
                                  r.param.c_str(), 100.0 * r.mape, r.seconds);
                    out << buf;
                }
            }
        } else if (bt_cmd->parsed()) {
            bt.solver = bt_flags.config();
            detail::require_non_empty(bt.lengths, "length");
            detail::require_non_empty(bt.dims, "dimension");
            detail::require_non_empty(bt.workers, "worker");
            detail::write_output(bench::to_csv(bench::run_time(bt)), bt_out, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace polysig::cli
