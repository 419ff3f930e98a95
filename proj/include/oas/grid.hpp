#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace oas {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tensor-product sampling box. Nodes are cell centers of an implicit
/// partition of [lower, upper], so a plain node sum is a midpoint rule.
struct Grid {
    int dim = 0;
    Vec lower;
    Vec upper;
    std::vector<int> counts;

    Grid() = default;
    Grid(Vec lo, Vec hi, std::vector<int> n) : dim(int(lo.size())), lower(std::move(lo)), upper(std::move(hi)), counts(std::move(n)) {
        if (int(upper.size()) != dim || int(counts.size()) != dim)
            throw std::invalid_argument("grid: dimension mismatch");
        for (int j = 0; j < dim; ++j) {
            if (!(lower[j] < upper[j])) throw std::invalid_argument("grid: lower must be < upper");
            if (counts[j] < 5) throw std::invalid_argument("grid: need at least 5 samples per axis");
        }
    }

    static Grid cube(int dim, double radius, int count) {
        Vec lo = Vec::Constant(dim, -radius), hi = Vec::Constant(dim, radius);
        return Grid(lo, hi, std::vector<int>(dim, count));
    }
    static Grid box(const Vec& lo, const Vec& hi, int count) {
        return Grid(lo, hi, std::vector<int>(size_t(lo.size()), count));
    }

    Vec spacing() const {
        Vec h(dim);
        for (int j = 0; j < dim; ++j) h[j] = (upper[j] - lower[j]) / (counts[j] - 1);
        return h;
    }

    long total() const {
        long t = 1;
        for (int c : counts) t *= c;
        return t;
    }

    /// Row-major flat index -> node coordinates (deterministic order).
    Vec point(long flat) const {
        Vec x(dim);
        for (int j = dim - 1; j >= 0; --j) {
            long i = flat % counts[j];
            flat /= counts[j];
            x[j] = lower[j] + i * (upper[j] - lower[j]) / (counts[j] - 1);
        }
        return x;
    }

    double cell_volume() const {
        double v = 1;
        Vec h = spacing();
        for (int j = 0; j < dim; ++j) v *= h[j];
        return v;
    }

    /// Halve the spacing (2k-1 nodes), for Richardson error estimates.
    Grid refined() const {
        std::vector<int> c(counts);
        for (int& k : c) k = 2 * k - 1;
        return Grid(lower, upper, c);
    }
};

}  // namespace oas
