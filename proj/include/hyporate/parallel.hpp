#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hyporate {

// Execution policy for sweep kernels. Every parallel kernel keeps a serial
// twin so results can be cross-checked and benchmarked against each other.
enum class Exec { serial, parallel };

// Worker count: min(OpenMP max threads, HYPORATE_THREADS) when the
// environment variable is set to a positive integer, OpenMP default otherwise.
int worker_cap();

namespace detail {
// Runs thunk(ctx, i) for i in [0, n) on the OpenMP pool; captures the first
// exception raised by a worker and re-throws it after the loop.
void run_indexed_parallel(std::size_t n, void (*thunk)(void*, std::size_t), void* ctx);
}  // namespace detail

// Applies fn(i) for i in [0, n).
template <typename Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    detail::run_indexed_parallel(
        n,
        [](void* raw, std::size_t i) { (*static_cast<Fn*>(raw))(i); },
        &fn);
}

// Evaluates fn(i) for every index and collects the results in order.
// Workers write to pre-sized slots, so the output does not depend on the
// schedule.
template <typename T, typename Fn>
std::vector<T> map_indexed(std::size_t n, Exec exec, Fn&& fn) {
    std::vector<T> out(n);
    for_each_index(n, exec, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

}  // namespace hyporate
