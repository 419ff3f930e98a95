#include "oas/reduce.hpp"

namespace oas {

double pairwise_sum(std::span<const double> terms) {
    const size_t n = terms.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0;
        for (double t : terms) s += t;
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace oas
