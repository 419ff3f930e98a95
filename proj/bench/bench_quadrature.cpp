// Compares the serial and OpenMP tree-reduced cell sums on a representative
// quadrature workload and confirms the results are bit-identical (the pairwise
// reduction order is fixed by the term count, not the thread schedule).

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oas/funcrep.hpp"
#include "oas/reduce.hpp"
#include "oas/weightfn.hpp"

using namespace oas;

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double timed(const char* label, long n, F&& sum, double* value) {
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
        double t0 = now();
        *value = sum();
        best = std::min(best, now() - t0);
    }
    std::printf("  %-28s %10.3f ms   (%.2f Mterms/s)\n", label, best * 1e3,
                double(n) / best / 1e6);
    return best;
}

}  // namespace

int main() {
    const int n = 2, count = 161;
    FunctionRep psi = FunctionRep::quadratic((Mat(2, 2) << 0.9, 0.2, 0.2, 1.4).finished(), 0.0);
    WeightFunction F = WeightFunction::exp_neg();
    Grid grid = Grid::cube(n, 4.0, count);
    RegularSet rs = regular_set(psi, grid);
    const long m = long(rs.size());

#ifdef _OPENMP
    std::printf("threads: %d, workload: %ld weighted cells (%d^%d grid)\n",
                omp_get_max_threads(), m, count, n);
#else
    std::printf("threads: 1 (OpenMP off), workload: %ld weighted cells\n", m);
#endif

    auto term = [&](long i) {
        size_t k = size_t(i);
        return rs.weights[k] * F(rs.values[k]) * std::sqrt(std::abs(rs.hess_dets[k]));
    };

    double vs = 0, vp = 0;
    double ts = timed("serial pairwise sum", m, [&] { return serial_sum(m, term); }, &vs);
    double tp = timed("parallel pairwise sum", m, [&] { return parallel_sum(m, term); }, &vp);

    std::printf("  speedup: %.2fx\n", ts / tp);
    if (vs == vp) {
        std::printf("  bit-identical results: yes (%.17g)\n", vs);
        return 0;
    }
    std::printf("  bit-identical results: NO (%.17g vs %.17g)\n", vs, vp);
    return 1;
}
