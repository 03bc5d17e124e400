#include "hyporate/parallel.hpp"

#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyporate {

int worker_cap() {
#ifdef _OPENMP
    int cap = omp_get_max_threads();
#else
    int cap = 1;
#endif
    if (const char* env = std::getenv("HYPORATE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v < cap) cap = static_cast<int>(v);
    }
    return cap;
}

namespace detail {

void run_indexed_parallel(std::size_t n, void (*thunk)(void*, std::size_t), void* ctx) {
#ifdef _OPENMP
    std::exception_ptr err;
    const int threads = worker_cap();
    const long long count = static_cast<long long>(n);
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            thunk(ctx, static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(hyporate_parallel_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
#else
    for (std::size_t i = 0; i < n; ++i) thunk(ctx, i);
#endif
}

}  // namespace detail
}  // namespace hyporate
