#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oas {

/// Fixed-order pairwise (tree) sum. The reduction order depends only on the
/// number of terms, so results are bit-identical no matter how the terms
/// were produced (serial or parallel fill).
double pairwise_sum(std::span<const double> terms);

/// Evaluate term(i) for i in [0, n) into a buffer (OpenMP when available)
/// and tree-reduce. Bit-stable across thread counts.
template <class F>
double parallel_sum(long n, F&& term) {
    std::vector<double> buf(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) buf[size_t(i)] = term(i);
    return pairwise_sum(buf);
}

/// Serial reference for parallel_sum; kept for testing and benchmarks.
template <class F>
double serial_sum(long n, F&& term) {
    std::vector<double> buf(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) buf[size_t(i)] = term(i);
    return pairwise_sum(buf);
}

}  // namespace oas
