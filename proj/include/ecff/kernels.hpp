#pragma once

// Row sweeps behind every exhaustive count. Each sweep visits rows
// 0..rows-1, lets the row functor add into a fixed-width counter vector,
// and sums the vectors. The serial sweep is the reference; the OpenMP sweep
// must return the same vector for any thread count.

#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#include <omp.h>

namespace ecff::kernels {

using Counters = std::vector<std::uint64_t>;

template <class RowFn>
Counters sweep_serial(std::uint64_t rows, std::size_t width, RowFn&& row)
{
    Counters acc(width, 0);
    for (std::uint64_t i = 0; i < rows; ++i) row(i, acc);
    return acc;
}

/// threads <= 0 uses the OpenMP default.
template <class RowFn>
Counters sweep_omp(std::uint64_t rows, std::size_t width, int threads, RowFn&& row)
{
    Counters total(width, 0);
    std::exception_ptr error;
    std::mutex merge;
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel num_threads(nt)
    {
        Counters local(width, 0);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                row(static_cast<std::uint64_t>(i), local);
            } catch (...) {
                std::lock_guard lock(merge);
                if (!error) error = std::current_exception();
            }
        }
        std::lock_guard lock(merge);
        for (std::size_t j = 0; j < width; ++j) total[j] += local[j];
    }
    if (error) std::rethrow_exception(error);
    return total;
}

/// Dispatch used by the public operations.
template <class RowFn>
Counters sweep(bool serial, std::uint64_t rows, std::size_t width, int threads, RowFn&& row)
{
    if (serial) return sweep_serial(rows, width, row);
    return sweep_omp(rows, width, threads, row);
}

} // namespace ecff::kernels
