#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "oas/reduce.hpp"

using namespace oas;

TEST_CASE("pairwise sum agrees with plain accumulation on benign data") {
    std::vector<double> v{1.5, -2.25, 3.0, 0.125, 7.0};
    CHECK(pairwise_sum(v) == doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)));
    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
    std::vector<double> one{42.0};
    CHECK(pairwise_sum(one) == 42.0);
}

TEST_CASE("parallel and serial fills reduce to bit-identical values") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> terms(100001);
    for (double& t : terms) t = u(rng) * std::exp(8 * u(rng));
    auto term = [&](long i) { return terms[size_t(i)]; };
    const long n = long(terms.size());
    double a = serial_sum(n, term);
    double b = parallel_sum(n, term);
    CHECK(a == b);  // exact: same tree, only the fill differs
}

TEST_CASE("pairwise tree loses less than left-to-right on adversarial data") {
    // many small terms after a large head; tree reduction keeps them
    std::vector<double> v(1 << 16, 1e-8);
    v.front() = 1.0;
    double tree = pairwise_sum(v);
    CHECK(tree == doctest::Approx(1.0 + (v.size() - 1) * 1e-8).epsilon(1e-12));
}
