// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "polysig/bench.hpp"
#include "polysig/polysig.hpp"

using namespace polysig;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// sum_n C^n / (n!)^2 to machine tolerance.
double one_segment_series(double c) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 400; ++n) {
        term *= c / (static_cast<double>(n) * n);
        sum += term;
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
    }
    return sum;
}

PiecewiseLinearPath random_walk(std::mt19937_64& rng, std::size_t segments, double amp, std::size_t dim = 2) {
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<std::vector<double>> rows(segments + 1, std::vector<double>(dim, 0.0));
    for (std::size_t i = 1; i <= segments; ++i)
        for (std::size_t k = 0; k < dim; ++k) rows[i][k] = rows[i - 1][k] + u(rng);
    return make_path(rows);
}

PiecewiseLinearPath scaled(const PiecewiseLinearPath& p, double a) {
    auto v = p.values();
    for (double& e : v) e *= a;
    return {p.times(), std::move(v), p.dim()};
}

// Table 1 regime: 8x8 batch of 2-d Brownian paths with 10 points.
constexpr std::uint64_t kTableSeed = 1;

const std::pair<PathBatch, PathBatch>& table_batches() {
    static const auto b = bench::generate(bench::Generator::brownian, kTableSeed, 10, 8);
    return b;
}

const GramMatrix& table_oracle() {
    static const GramMatrix g = oracle_gram(table_batches().first, table_batches().second, 18);
    return g;
}

double table_mape(const SolverConfig& cfg) {
    const auto& [xs, ys] = table_batches();
    return analysis::mape(gram(xs, ys, cfg).values, table_oracle().values);
}

Outcome criterion1() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const KernelSolver pa({Scheme::polyapprox, 12});
    const KernelSolver pi({Scheme::polyinterp, 8});
    double worst[3] = {0, 0, 0};
    for (int t = 0; t < 50; ++t) {
        const auto x = make_path({{0.0, 0.0}, {u(rng), u(rng)}});
        const auto y = make_path({{0.0, 0.0}, {u(rng), u(rng)}});
        const double exact = one_segment_series(rect_coeff(x, y, 0, 0).c);
        const double got[3] = {pa(x, y), pi(x, y), sigoracle::truncated_kernel(x, y, 18)};
        for (int s = 0; s < 3; ++s) worst[s] = std::max(worst[s], std::abs(got[s] - exact) / std::abs(exact));
    }
    const bool ok = worst[0] <= 1e-13 && worst[1] <= 1e-13 && worst[2] <= 1e-13;
    return {ok, fmt("max rel err polyapprox %.2e, polyinterp %.2e, oracle %.2e (tol 1e-13)", worst[0], worst[1],
                    worst[2])};
}

Outcome criterion2() {
    const double m10 = table_mape({Scheme::polyapprox, 10});
    const double m4 = table_mape({Scheme::polyapprox, 4});
    return {m10 <= 1e-12 && m4 <= 1e-4,
            fmt("polyapprox mape N=10 %.3e (<= 1e-12), N=4 %.3e (<= 1e-4)", m10, m4)};
}

Outcome criterion3() {
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 4; ++n) {
        const double a = table_mape({Scheme::polyapprox, n});
        const double i = table_mape({Scheme::polyinterp, n});
        ok = ok && i <= 0.1 * a;
        detail += fmt("N=%d interp/approx %.2e; ", n, i / a);
    }
    return {ok, detail + "(<= 0.1)"};
}

Outcome criterion4() {
    std::vector<double> m;
    for (std::size_t g : {1, 2, 4, 8, 16}) m.push_back(table_mape({Scheme::fd2, 8, g}));
    bool monotone = true;
    for (std::size_t k = 1; k < m.size(); ++k) monotone = monotone && m[k] < m[k - 1];
    const auto in_band = [](double v, double target) { return v >= target / 10.0 && v <= target * 10.0; };
    const bool b2 = in_band(m[1], 1.064e-3);
    const bool b8 = in_band(m[3], 2.238e-5);
    return {monotone && b2 && b8,
            fmt("fd2 mape g=1..16: %.2e %.2e %.2e %.2e %.2e; g=2 in [1.06e-4,1.06e-2]: %s; "
                "g=8 in [2.24e-6,2.24e-4]: %s; monotone: %s",
                m[0], m[1], m[2], m[3], m[4], b2 ? "yes" : "no", b8 ? "yes" : "no", monotone ? "yes" : "no")};
}

Outcome criterion5() {
    std::mt19937_64 rng(505);
    int strict_violations = 0, violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t lx = 1 + rng() % 6, ly = 1 + rng() % 6;
        const int order = 2 + static_cast<int>(rng() % 7);
        const auto x = random_walk(rng, lx, 1.0);
        const auto y = random_walk(rng, ly, 1.0);
        const double ref = sigoracle::truncated_kernel(x, y, 18);
        const double err = std::abs(polyapprox::kernel(x, y, order) - ref);
        const double bound = analysis::gte_bound(analysis::bound_params(x, y, order));
        // Rounding floor: a few ulps of the kernel value cannot be resolved in binary64.
        const double floor = 8.0 * kEps * std::abs(ref);
        if (err > bound) ++strict_violations;
        if (err > bound + floor) ++violations;
        if (bound > 0.0) worst = std::max(worst, err / bound);
    }
    return {violations == 0, fmt("violations %d/100 (strict, without the 8-ulp rounding floor: %d); "
                                 "max err/bound %.3f",
                                 violations, strict_violations, worst)};
}

Outcome criterion6() {
    std::mt19937_64 rng(606);
    const CoeffTables tables(24);
    double worst = 0.0;
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
        const auto x = random_walk(rng, 1 + rng() % 3, 1.0);
        const auto y = random_walk(rng, 1 + rng() % 3, 1.0);
        const auto bp = analysis::bound_params(x, y, 24);
        if (bp.k_max == 0.0) continue;
        std::vector<double> pe, qe;
        polyapprox::sweep(x, y, tables, 1, pe, qe,
                          [&](std::size_t i, std::size_t j, std::span<const double> p, std::span<const double> q) {
                              const int gamma = static_cast<int>(i + j + 1);
                              const double norm = analysis::gamma_norm(p, q, gamma, bp.k_max, bp.delta);
                              const double f = analysis::f_factor(i + j, bp.k_max, bp.delta);
                              worst = std::max(worst, norm / f);
                              ok = ok && norm <= f * (1.0 + 1e-10);
                          });
    }
    return {ok, fmt("max ||Lambda_ij||_{i+j+1} / f(i+j) = %.6f (<= 1 + 1e-10)", worst)};
}

Outcome criterion7() {
    // x moves along e1 and y along e2, so every rectangle coefficient is zero.
    const auto x = make_path({{0.0, 0.0}, {0.7, 0.0}, {-0.4, 0.0}, {1.3, 0.0}});
    const auto y = make_path({{0.0, 0.0}, {0.0, 2.0}, {0.0, -1.5}});
    const double a = kernel(x, y, {Scheme::polyapprox, 10});
    const double i = kernel(x, y, {Scheme::polyinterp, 10});
    const double f = kernel(x, y, {Scheme::fd2, 8, 4});
    return {a == 1.0 && i == 1.0 && f == 1.0, fmt("polyapprox %.17g, polyinterp %.17g, fd2 %.17g", a, i, f)};
}

Outcome criterion8() {
    const auto [xs, ys] = bench::generate(bench::Generator::brownian, 808, 12, 8);
    bool ok = true;
    for (const Scheme s : {Scheme::polyapprox, Scheme::polyinterp, Scheme::fd2}) {
        const SolverConfig cfg{s, 8, 2};
        const auto g1 = gram(xs, ys, cfg, 1);
        ok = ok && gram(xs, ys, cfg, 2).values == g1.values && gram(xs, ys, cfg, 8).values == g1.values;
    }
    return {ok, ok ? "bitwise identical for 1, 2, 8 workers (polyapprox, polyinterp, fd2)" : "Gram differs"};
}

Outcome criterion9() {
    std::mt19937_64 rng(909);
    PathBatch batch;
    for (int k = 0; k < 6; ++k) batch.push_back(sample_brownian(rng(), 8, 2));
    const auto g = gram(batch, batch, {Scheme::polyapprox, 10});
    Eigen::MatrixXd m(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = g(i, j);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
    const double trace = m.trace();
    return {min_eig >= -1e-8 * trace, fmt("min eigenvalue %.3e, -1e-8*trace %.3e", min_eig, -1e-8 * trace)};
}

Outcome criterion10() {
    const SolverConfig cfg{Scheme::polyapprox, 8};
    const auto [xs, unused] = bench::generate(bench::Generator::brownian, 1000, 10, 8);
    const double p_same = permutation_test(xs, xs, cfg, 200, 1).p_value;
    int rejected = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto [a, b] = bench::generate(bench::Generator::brownian, 2000 + seed, 10, 8);
        for (auto& p : b) p = scaled(p, 5.0);
        if (permutation_test(a, b, cfg, 200, seed).p_value < 0.05) ++rejected;
    }
    return {p_same == 1.0 && rejected >= 95,
            fmt("identical batches p = %.17g; Brownian vs 5x Brownian rejected at 0.05 in %d/100 seeds", p_same,
                rejected)};
}

}  // namespace

int main() {
    struct Item {
        int id;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items{
        {1, 1.0, criterion1},   {2, 30.0, criterion2},  {3, 30.0, criterion3}, {4, 60.0, criterion4},
        {5, 60.0, criterion5},  {6, 30.0, criterion6},  {7, 0.0, criterion7},  {8, 0.0, criterion8},
        {9, 0.0, criterion9},   {10, 300.0, criterion10},
    };
    int failures = 0;
    for (const auto& item : items) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = item.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt("%.2f s", secs);
        if (item.limit_s > 0.0) {
            timing += fmt(" (limit %.0f s)", item.limit_s);
            if (secs > item.limit_s) {
                o.pass = false;
                timing += " over time limit";
            }
        }
        if (!o.pass) ++failures;
        std::printf("criterion %2d: %s  %s  [%s]\n", item.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failures, items.size());
    return failures == 0 ? 0 : 1;
}
