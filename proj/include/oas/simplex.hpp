#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "oas/grid.hpp"

namespace oas {

struct SimplexResult {
    Vec x;
    double fx = 0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization (reflect / expand / contract /
/// shrink). Deterministic for a given start point and step.
inline SimplexResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                                 double step, int max_iter, double ftol_rel = 1e-6) {
    const int n = int(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<Vec> xs(size_t(n) + 1, x0);
    for (int i = 0; i < n; ++i) xs[size_t(i) + 1][i] += step;
    std::vector<double> fs(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) fs[size_t(i)] = f(xs[size_t(i)]);

    std::vector<int> order(size_t(n) + 1);
    SimplexResult res;
    int it = 0;
    for (; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[size_t(a)] < fs[size_t(b)]; });
        const int best = order[0], worst = order[size_t(n)], second_worst = order[size_t(n) - 1];

        double spread = std::abs(fs[size_t(worst)] - fs[size_t(best)]);
        if (spread <= ftol_rel * (std::abs(fs[size_t(best)]) + 1e-30)) {
            res.converged = true;
            break;
        }

        Vec centroid = Vec::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += xs[size_t(i)];
        centroid /= n;

        Vec xr = centroid + alpha * (centroid - xs[size_t(worst)]);
        double fr = f(xr);
        if (fr < fs[size_t(best)]) {
            Vec xe = centroid + gamma * (centroid - xs[size_t(worst)]);
            double fe = f(xe);
            if (fe < fr) {
                xs[size_t(worst)] = xe;
                fs[size_t(worst)] = fe;
            } else {
                xs[size_t(worst)] = xr;
                fs[size_t(worst)] = fr;
            }
        } else if (fr < fs[size_t(second_worst)]) {
            xs[size_t(worst)] = xr;
            fs[size_t(worst)] = fr;
        } else {
            Vec xc = centroid + rho * (xs[size_t(worst)] - centroid);
            double fc = f(xc);
            if (fc < fs[size_t(worst)]) {
                xs[size_t(worst)] = xc;
                fs[size_t(worst)] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    xs[size_t(i)] = xs[size_t(best)] + sigma * (xs[size_t(i)] - xs[size_t(best)]);
                    fs[size_t(i)] = f(xs[size_t(i)]);
                }
            }
        }
    }

    size_t bi = size_t(std::min_element(fs.begin(), fs.end()) - fs.begin());
    res.x = xs[bi];
    res.fx = fs[bi];
    res.iterations = it;
    return res;
}

}  // namespace oas
