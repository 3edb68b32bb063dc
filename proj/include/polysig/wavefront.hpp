#pragma once

#include <algorithm>
#include <atomic>
#include <barrier>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polysig {

namespace detail {
class FirstError {
public:
    void capture() {
        std::lock_guard lock(mu_);
        if (!err_) err_ = std::current_exception();
    }
    void rethrow() const {
        if (err_) std::rethrow_exception(err_);
    }

private:
    std::mutex mu_;
    std::exception_ptr err_;
};
}  // namespace detail

/// Visits every cell (i, j) of an nx x ny grid where cell (i, j) depends on
/// (i-1, j) and (i, j-1).
///
/// With one worker the order is row-major (j outer, i inner). With more, cells
/// on the same anti-diagonal i + j run concurrently and a barrier separates
/// diagonals. Each cell is handled by exactly one thread, so results are
/// bitwise identical for any worker count provided `cell` is deterministic.
template <class CellFn>
void sweep_grid(std::size_t nx, std::size_t ny, unsigned workers, CellFn&& cell) {
    if (nx == 0 || ny == 0) return;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min(nx, ny))));
    if (workers == 1) {
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i) cell(i, j);
        return;
    }
    const std::size_t diagonals = nx + ny - 1;
    std::barrier sync(static_cast<std::ptrdiff_t>(workers));
    detail::FirstError error;
    auto run = [&](unsigned tid) {
        for (std::size_t d = 0; d < diagonals; ++d) {
            const std::size_t i_lo = d >= ny ? d - ny + 1 : 0;
            const std::size_t i_hi = std::min(d, nx - 1);
            for (std::size_t i = i_lo + tid; i <= i_hi; i += workers) {
                try {
                    cell(i, d - i);
                } catch (...) {
                    error.capture();
                }
            }
            sync.arrive_and_wait();
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run, t);
        run(0);
    }
    error.rethrow();
}

/// Runs fn(k) for k in [0, n) on `workers` threads. Tasks are pulled from a
/// shared counter; fn must only write state owned by task k.
template <class TaskFn>
void parallel_for(std::size_t n, unsigned workers, TaskFn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    detail::FirstError error;
    auto run = [&] {
        for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
            try {
                fn(k);
            } catch (...) {
                error.capture();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
        run();
    }
    error.rethrow();
}

}  // namespace polysig
