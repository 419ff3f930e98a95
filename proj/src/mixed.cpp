#include "oas/mixed.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "oas/reduce.hpp"
#include "oas/simplex.hpp"

namespace oas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sqrt2pi_pow(int n) { return std::pow(std::sqrt(2 * M_PI), n); }

/// Intersection of the per-component default windows (largest lower corner,
/// smallest upper corner, finest node count per axis).
Grid common_window(const std::vector<FunctionRep>& psis) {
    Grid g = default_window(psis.front());
    for (size_t j = 1; j < psis.size(); ++j) {
        Grid w = default_window(psis[j]);
        for (int k = 0; k < g.dim; ++k) {
            g.lower[k] = std::max(g.lower[k], w.lower[k]);
            g.upper[k] = std::min(g.upper[k], w.upper[k]);
            g.counts[size_t(k)] = std::max(g.counts[size_t(k)], w.counts[size_t(k)]);
            if (!(g.lower[k] < g.upper[k]))
                throw std::runtime_error("mixed: the common domain is empty");
        }
    }
    return g;
}

double dual_mass(const RegularSet& dual_reg, const PointFn& g) {
    return sum_regular(dual_reg, [&](size_t i) {
        double v = g(dual_reg.points[i]);
        return std::isfinite(v) && v > 0 ? v : 0.0;
    });
}

/// Integral over the common regular set of prod_j [h_j(g_j(grad psi_j)/F2_j)
/// F1_j(psi_j)]^{e_j}; components with e_j = 0 are skipped entirely.
double product_sum(const MixedContext& ctx, const std::vector<PointFn>& gs,
                   const std::vector<double>& exps) {
    const long N = long(ctx.points.size());
    const int m = ctx.m();
    std::atomic<long> valid{0};
    std::vector<double> terms(static_cast<size_t>(N), 0.0);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < N; ++k) {
        double prod = 1;
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            if (exps[size_t(j)] == 0) continue;
            double val = ctx.values[size_t(j)][size_t(k)];
            const Vec& grad = ctx.gradients[size_t(j)][size_t(k)];
            double arg = gs[size_t(j)](grad) /
                         ctx.spec.F2s[size_t(j)](ctx.points[size_t(k)].dot(grad) - val);
            if (!(arg > 0) || !std::isfinite(arg)) {
                ok = false;
                break;
            }
            double factor = ctx.spec.hs[size_t(j)](arg) * ctx.spec.F1s[size_t(j)](val);
            prod *= std::pow(factor, exps[size_t(j)]);
        }
        if (!ok || !std::isfinite(prod)) continue;
        ++valid;
        terms[size_t(k)] = prod * ctx.weights[size_t(k)];
    }
    if (valid == 0)
        throw std::runtime_error("mixed integral: candidates nonpositive on the whole common set");
    return pairwise_sum(terms);
}

std::vector<double> equal_exponents(int m) { return std::vector<double>(size_t(m), 1.0 / m); }

/// Joint inf/sup: fixed combination (every g_i = F2_i o psi_i*) first, then a
/// concatenated Gaussian chart optimized by simplex search.
VariationalResult optimize_joint(const MixedContext& ctx, const CandidateFamily& family,
                                 const std::function<double(const std::vector<PointFn>&)>& objective,
                                 bool minimize) {
    const int m = ctx.m();
    const int n = ctx.n();
    const double sign = minimize ? 1.0 : -1.0;

    auto safe = [&](const std::vector<PointFn>& gs) -> double {
        try {
            double v = objective(gs);
            return std::isfinite(v) ? sign * v : kInf;
        } catch (const std::exception&) {
            return kInf;
        }
    };

    VariationalResult res;
    double best = kInf;

    bool base_ok = true;
    if (family.logconcave_only)
        for (const WeightFunction& F2 : ctx.spec.F2s) base_ok = base_ok && F2.is_logconcave_radial();
    if (base_ok) {
        std::vector<PointFn> gs;
        for (int j = 0; j < m; ++j) {
            FunctionRep dual = ctx.singles[size_t(j)].dp.dual;
            WeightFunction F2 = ctx.spec.F2s[size_t(j)];
            gs.push_back([dual, F2](const Vec& y) -> double {
                double v = dual.eval(y);
                return std::isfinite(v) ? F2(v) : 0.0;
            });
        }
        double v = safe(gs);
        if (v < best) {
            best = v;
            res.winner = "base-scaled";
        }
    }

    if (family.use_gaussian) {
        const int per = n * (n + 1) / 2 + n;
        const int nparams = m * per;
        auto make_gs = [m, n, per](const Vec& th) {
            std::vector<PointFn> gs;
            for (int j = 0; j < m; ++j) {
                Mat L = Mat::Zero(n, n);
                int k = j * per;
                for (int i = 0; i < n; ++i) L(i, i) = std::exp(th[k++]);
                for (int i = 1; i < n; ++i)
                    for (int c = 0; c < i; ++c) L(i, c) = th[k++];
                Mat B = L * L.transpose();
                Vec mu(n);
                for (int i = 0; i < n; ++i) mu[i] = th[k++];
                gs.push_back([B, mu](const Vec& y) {
                    Vec d = y - mu;
                    return std::exp(-0.5 * d.dot(B * d));
                });
            }
            return gs;
        };
        std::vector<Vec> seeds;
        seeds.push_back(Vec::Zero(nparams));
        Vec wide = Vec::Zero(nparams), narrow = Vec::Zero(nparams);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) {
                wide[j * per + i] = -0.7;
                narrow[j * per + i] = 0.7;
            }
        seeds.push_back(wide);
        seeds.push_back(narrow);
        for (const Vec& s0 : seeds) {
            SimplexResult r = nelder_mead([&](const Vec& th) { return safe(make_gs(th)); }, s0,
                                          0.3, 200 * nparams);
            res.iterations += r.iterations;
            if (r.fx < best) {
                best = r.fx;
                res.winner = "gaussian";
                res.argmin_params = r.x;
                res.converged = r.converged;
            }
        }
    }

    if (!(best < kInf)) throw std::runtime_error("mixed variational search: no admissible candidate");
    res.value = sign * best;
    return res;
}

VariationalResult joint_as(const MixedContext& ctx, const CandidateFamily& family,
                           const std::vector<double>& exps) {
    const int m = ctx.m();
    const double tgt = sqrt2pi_pow(ctx.n());
    auto objective = [&](const std::vector<PointFn>& gs) {
        std::vector<PointFn> scaled;
        for (int j = 0; j < m; ++j) {
            double Ig = dual_mass(ctx.singles[size_t(j)].dual_reg, gs[size_t(j)]);
            if (!(Ig > 0)) throw std::runtime_error("candidate has zero dual mass");
            double tau = tgt / Ig;
            PointFn g = gs[size_t(j)];
            scaled.push_back([tau, g](const Vec& y) { return tau * g(y); });
        }
        return product_sum(ctx, scaled, exps);
    };
    return optimize_joint(ctx, family, objective, ctx.spec.hs.front().is_inf_problem());
}

}  // namespace

MixedContext make_mixed_context(const MixedSpec& spec, const std::optional<Grid>& grid) {
    const int m = spec.m();
    if (m < 1) throw std::invalid_argument("mixed: need at least one component");
    if (int(spec.hs.size()) != m || int(spec.F1s.size()) != m || int(spec.F2s.size()) != m)
        throw std::invalid_argument("mixed: component lists must have equal length");
    const int n = spec.psis.front().dim();
    for (const FunctionRep& psi : spec.psis)
        if (psi.dim() != n) throw std::invalid_argument("mixed: dimension mismatch");
    for (const OrliczFunction& h : spec.hs)
        if (h.cls() != spec.hs.front().cls())
            throw std::invalid_argument("mixed: all h must share one class (Phi^m / Psi^m rule)");

    MixedContext ctx;
    ctx.spec = spec;
    ctx.grid = grid ? *grid : common_window(spec.psis);

    const long N = ctx.grid.total();
    const double cellvol = ctx.grid.cell_volume();
    std::vector<char> member(static_cast<size_t>(N), 0);
    std::vector<std::vector<double>> vals(size_t(m), std::vector<double>(static_cast<size_t>(N)));
    std::vector<std::vector<Vec>> grads(size_t(m), std::vector<Vec>(static_cast<size_t>(N)));
#pragma omp parallel for schedule(static)
    for (long k = 0; k < N; ++k) {
        Vec x = ctx.grid.point(k);
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            try {
                double v = spec.psis[size_t(j)].eval(x);
                if (!std::isfinite(v)) {
                    ok = false;
                    break;
                }
                Mat H = spec.psis[size_t(j)].hessian(x);
                double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
                if (!(std::abs(H.determinant()) > tol::det_rel * std::pow(scale, n))) {
                    ok = false;
                    break;
                }
                vals[size_t(j)][size_t(k)] = v;
                grads[size_t(j)][size_t(k)] = spec.psis[size_t(j)].gradient(x);
            } catch (const std::exception&) {
                ok = false;
            }
        }
        member[size_t(k)] = ok ? 1 : 0;
    }
    ctx.values.assign(size_t(m), {});
    ctx.gradients.assign(size_t(m), {});
    for (long k = 0; k < N; ++k) {
        if (!member[size_t(k)]) continue;
        ctx.points.push_back(ctx.grid.point(k));
        ctx.weights.push_back(cellvol);
        for (int j = 0; j < m; ++j) {
            ctx.values[size_t(j)].push_back(vals[size_t(j)][size_t(k)]);
            ctx.gradients[size_t(j)].push_back(grads[size_t(j)][size_t(k)]);
        }
    }
    if (ctx.points.empty()) throw std::runtime_error("mixed: the common domain is empty");

    for (int j = 0; j < m; ++j) ctx.singles.push_back(make_context(spec.psis[size_t(j)]));
    return ctx;
}

double mixed_v(const MixedContext& ctx, const std::vector<PointFn>& gs) {
    if (int(gs.size()) != ctx.m()) throw std::invalid_argument("mixed_v: need one g per component");
    return product_sum(ctx, gs, equal_exponents(ctx.m()));
}

VariationalResult mixed_orlicz_as(const MixedContext& ctx, const CandidateFamily& family) {
    return joint_as(ctx, family, equal_exponents(ctx.m()));
}

VariationalResult mixed_orlicz_gm(const MixedContext& ctx, CandidateFamily family) {
    family.logconcave_only = true;
    return joint_as(ctx, family, equal_exponents(ctx.m()));
}

namespace {

std::vector<double> ith_exponents(const MixedContext& ctx, int i) {
    const int n = ctx.n();
    if (ctx.m() != 2) throw std::invalid_argument("i-th mixed quantities need exactly two components");
    if (i < 0 || i > n) throw std::invalid_argument("i-th mixed quantities need 0 <= i <= n");
    return {double(n - i) / n, double(i) / n};
}

}  // namespace

double ith_mixed_v(const MixedContext& ctx, int i, const std::vector<PointFn>& gs) {
    if (int(gs.size()) != 2) throw std::invalid_argument("ith_mixed_v: need two candidates");
    return product_sum(ctx, gs, ith_exponents(ctx, i));
}

VariationalResult ith_mixed_as(const MixedContext& ctx, int i, const CandidateFamily& family) {
    return joint_as(ctx, family, ith_exponents(ctx, i));
}

VariationalResult ith_mixed_gm(const MixedContext& ctx, int i, CandidateFamily family) {
    family.logconcave_only = true;
    return joint_as(ctx, family, ith_exponents(ctx, i));
}

}  // namespace oas
