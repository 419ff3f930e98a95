#include "oas/orlicz.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "oas/simplex.hpp"

namespace oas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sqrt2pi_pow(int n) { return std::pow(std::sqrt(2 * M_PI), n); }

/// <x, grad psi(x)> - psi(x), the argument fed to F2 on the primal side.
double dual_arg(const RegularSet& rs, size_t i) {
    return rs.points[i].dot(rs.gradients[i]) - rs.values[i];
}

/// V_{h,F1,F2} as a cheap sum over a prebuilt regular set. Points where the
/// candidate degenerates to a nonpositive ratio carry no mass.
double mixed_sum(const OrliczFunction& h, const WeightFunction& F1, const WeightFunction& F2,
                 const RegularSet& rs, const PointFn& g) {
    std::atomic<long> valid{0};
    double v = sum_regular(rs, [&](size_t i) {
        double arg = g(rs.gradients[i]) / F2(dual_arg(rs, i));
        if (!(arg > 0) || !std::isfinite(arg)) return 0.0;
        ++valid;
        return h(arg) * F1(rs.values[i]);
    });
    if (valid == 0) throw std::runtime_error("mixed integral: candidate nonpositive on the whole regular set");
    return v;
}

double vp_sum(double p, const WeightFunction& F1, const WeightFunction& F2,
              const RegularSet& rs, const PointFn& g, int n) {
    std::atomic<long> valid{0};
    double v = sum_regular(rs, [&](size_t i) {
        double gv = g(rs.gradients[i]);
        if (!(gv > 0) || !std::isfinite(gv)) return 0.0;
        ++valid;
        return std::pow(F2(dual_arg(rs, i)) / gv, p / n) * F1(rs.values[i]);
    });
    if (valid == 0) throw std::runtime_error("vp: candidate nonpositive on the whole regular set");
    return v;
}

/// I(g, psi*) over the prebuilt dual regular set.
double dual_mass(const RegularSet& dual_reg, const PointFn& g) {
    return sum_regular(dual_reg, [&](size_t i) {
        double v = g(dual_reg.points[i]);
        return std::isfinite(v) && v > 0 ? v : 0.0;
    });
}

}  // namespace

OrliczContext make_context(const FunctionRep& psi, const std::optional<Grid>& grid,
                           const std::optional<Grid>& dual_grid) {
    OrliczContext ctx;
    ctx.psi = psi;
    ctx.grid = grid ? *grid : default_window(psi);
    DualOptions opt;
    opt.primal_grid = ctx.grid;
    opt.dual_grid = dual_grid;
    opt.compute_involution = false;
    ctx.dp = legendre(psi, opt);
    // Candidates are normalized against a fixed O(1) mass target, so the dual
    // window must cover the O(1) scale even when the gradient range of a flat
    // potential is tiny; otherwise truncation under-counts the mass of wide
    // candidates and the normalization inflates them spuriously. Only safe
    // when the conjugate is closed-form (a sampled dual has no values outside
    // its window).
    if (!dual_grid && ctx.dp.dual.closed_form()) {
        Grid& dg = ctx.dp.dual_grid;
        bool widen = false;
        Vec lo = dg.lower, hi = dg.upper;
        for (int j = 0; j < dg.dim; ++j) {
            if (ctx.grid.lower[j] < lo[j]) lo[j] = ctx.grid.lower[j], widen = true;
            if (ctx.grid.upper[j] > hi[j]) hi[j] = ctx.grid.upper[j], widen = true;
        }
        if (widen) dg = Grid(lo, hi, dg.counts);
    }
    ctx.reg = regular_set(psi, ctx.grid);
    ctx.dual_reg = regular_set(ctx.dp.dual, ctx.dp.dual_grid);
    return ctx;
}

double mixed_integral(const OrliczFunction& h, const WeightFunction& F1, const WeightFunction& F2,
                      const OrliczContext& ctx, const PointFn& g) {
    return mixed_sum(h, F1, F2, ctx.reg, g);
}

double vp(double p, const WeightFunction& F1, const WeightFunction& F2,
          const OrliczContext& ctx, const PointFn& g) {
    if (p == -ctx.psi.dim()) throw std::invalid_argument("vp: p = -n is excluded");
    return vp_sum(p, F1, F2, ctx.reg, g, ctx.psi.dim());
}

IntegralResult asp_direct(double p, const WeightFunction& F1, const WeightFunction& F2,
                          const OrliczContext& ctx) {
    const int n = ctx.psi.dim();
    if (p == -n) throw std::invalid_argument("asp_direct: p = -n is excluded");
    return integrate_regular(ctx.psi, ctx.grid, [&](const RegularSet& rs, size_t i) {
        return std::pow(F1(rs.values[i]), double(n) / (n + p)) *
               std::pow(F2(dual_arg(rs, i)) * rs.hess_dets[i], p / (n + p));
    });
}

Candidate g0_witness(double p, const WeightFunction& F1, const WeightFunction& F2,
                     const OrliczContext& ctx) {
    const int n = ctx.psi.dim();
    if (p == -n) throw std::invalid_argument("g0_witness: p = -n is excluded");
    FunctionRep dual = ctx.dp.dual;
    Candidate c;
    c.name = "g0";
    c.g = [dual, p, F1, F2, n](const Vec& y) -> double {
        double v = dual.eval(y);
        if (!std::isfinite(v)) return 0.0;
        Vec grad;
        Mat H;
        try {
            grad = dual.gradient(y);
            H = dual.hessian(y);
        } catch (const std::exception&) {
            return 0.0;
        }
        double det = H.determinant();
        if (!(det > 0)) return 0.0;
        double t = y.dot(grad) - v;
        double base = F1(t) * std::pow(F2(v), p / n) * det;
        return base > 0 ? std::pow(base, double(n) / (n + p)) : 0.0;
    };
    return c;
}

VariationalResult optimize_over(int dim, CandidateFamily family,
                                const std::function<double(const PointFn&)>& objective,
                                bool minimize, double reference) {
    const int n = dim;
    const double sign = minimize ? 1.0 : -1.0;
    const double bad = kInf;

    auto safe = [&](const PointFn& g) -> double {
        try {
            double v = objective(g);
            return std::isfinite(v) ? sign * v : bad;
        } catch (const std::exception&) {
            return bad;
        }
    };

    VariationalResult res;
    double best = bad;
    for (const Candidate& c : family.fixed) {
        if (family.logconcave_only && !c.logconcave) continue;
        double v = safe(c.g);
        if (v < best) {
            best = v;
            res.winner = c.name;
            res.argmin_params = Vec();
        }
    }

    if (family.use_gaussian) {
        const int nparams = n * (n + 1) / 2 + n;
        auto make_g = [n](const Vec& th) -> PointFn {
            Mat L = Mat::Zero(n, n);
            int k = 0;
            for (int i = 0; i < n; ++i) L(i, i) = std::exp(th[k++]);
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < i; ++j) L(i, j) = th[k++];
            Mat B = L * L.transpose();
            Vec mu(n);
            for (int i = 0; i < n; ++i) mu[i] = th[k++];
            return [B, mu](const Vec& y) {
                Vec d = y - mu;
                return std::exp(-0.5 * d.dot(B * d));
            };
        };
        std::vector<Vec> seeds;
        seeds.push_back(Vec::Zero(nparams));
        Vec wide = Vec::Zero(nparams), narrow = Vec::Zero(nparams);
        for (int i = 0; i < n; ++i) {
            wide[i] = -0.7;
            narrow[i] = 0.7;
        }
        seeds.push_back(wide);
        seeds.push_back(narrow);
        for (const Vec& s0 : seeds) {
            SimplexResult r = nelder_mead([&](const Vec& th) { return safe(make_g(th)); }, s0,
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

    if (family.use_perturbation && !family.logconcave_only && !family.fixed.empty()) {
        // first fixed candidate times exp(linear + diagonal quadratic)
        PointFn base = family.fixed.front().g;
        const int nparams = 2 * n;
        auto make_g = [base, n](const Vec& th) -> PointFn {
            Vec a = th.head(n), d = th.tail(n);
            return [base, a, d](const Vec& y) {
                double q = a.dot(y);
                for (long j = 0; j < y.size(); ++j) q += d[j] * y[j] * y[j];
                return base(y) * std::exp(q);
            };
        };
        SimplexResult r = nelder_mead([&](const Vec& th) { return safe(make_g(th)); },
                                      Vec::Zero(nparams), 0.05, 200 * nparams);
        res.iterations += r.iterations;
        if (r.fx < best) {
            best = r.fx;
            res.winner = "perturbation";
            res.argmin_params = r.x;
            res.converged = r.converged;
        }
    }

    if (!(best < bad)) throw std::runtime_error("variational search: no admissible candidate");
    res.value = sign * best;
    res.bound_gap = std::isnan(reference) ? kNaN : res.value - reference;
    return res;
}

namespace {

/// The candidate realizing the upper/lower bound: g proportional to F2 o psi*.
Candidate base_scaled(const OrliczContext& ctx, const WeightFunction& F2) {
    FunctionRep dual = ctx.dp.dual;
    Candidate c;
    c.name = "base-scaled";
    c.logconcave = F2.is_logconcave_radial();
    c.g = [dual, F2](const Vec& y) -> double {
        double v = dual.eval(y);
        return std::isfinite(v) ? F2(v) : 0.0;
    };
    return c;
}

VariationalResult orlicz_opt(const OrliczFunction& h, const WeightFunction& F1,
                             const WeightFunction& F2, const OrliczContext& ctx,
                             CandidateFamily family, std::optional<double> target) {
    const double tgt = target ? *target : sqrt2pi_pow(ctx.psi.dim());
    family.fixed.insert(family.fixed.begin(), base_scaled(ctx, F2));
    auto objective = [&](const PointFn& g) {
        double Ig = dual_mass(ctx.dual_reg, g);
        if (!(Ig > 0)) throw std::runtime_error("candidate has zero dual mass");
        double tau = tgt / Ig;
        return mixed_sum(h, F1, F2, ctx.reg, [&](const Vec& y) { return tau * g(y); });
    };
    return optimize_over(ctx.psi.dim(), family, objective, h.is_inf_problem(), kNaN);
}

}  // namespace

VariationalResult asp_variational(double p, const WeightFunction& F1, const WeightFunction& F2,
                                  const OrliczContext& ctx, const CandidateFamily& family) {
    const int n = ctx.psi.dim();
    if (p == -n) throw std::invalid_argument("asp_variational: p = -n is excluded");
    auto objective = [&](const PointFn& g) {
        double V = vp_sum(p, F1, F2, ctx.reg, g, n);
        double Ig = dual_mass(ctx.dual_reg, g);
        if (!(V > 0) || !(Ig > 0)) throw std::runtime_error("degenerate candidate");
        return std::pow(V, double(n) / (n + p)) * std::pow(Ig, p / (n + p));
    };
    double reference = asp_direct(p, F1, F2, ctx).value;
    return optimize_over(ctx.psi.dim(), family, objective, p >= 0, reference);
}

VariationalResult orlicz_as(const OrliczFunction& h, const WeightFunction& F1,
                            const WeightFunction& F2, const OrliczContext& ctx,
                            CandidateFamily family, std::optional<double> target) {
    return orlicz_opt(h, F1, F2, ctx, std::move(family), target);
}

VariationalResult orlicz_gm(const OrliczFunction& h, const WeightFunction& F1,
                            const WeightFunction& F2, const OrliczContext& ctx,
                            CandidateFamily family, std::optional<double> target) {
    family.logconcave_only = true;
    family.use_perturbation = false;
    return orlicz_opt(h, F1, F2, ctx, std::move(family), target);
}

GpResult gp(double p, const WeightFunction& F1, const WeightFunction& F2,
            const OrliczContext& ctx, CandidateFamily family) {
    const int n = ctx.psi.dim();
    if (p == -n) throw std::invalid_argument("gp: p = -n is excluded");
    family.logconcave_only = true;
    family.use_perturbation = false;

    GpResult out;
    auto objective = [&](const PointFn& g) {
        double V = vp_sum(p, F1, F2, ctx.reg, g, n);
        double Ig = dual_mass(ctx.dual_reg, g);
        if (!(V > 0) || !(Ig > 0)) throw std::runtime_error("degenerate candidate");
        return std::pow(V, double(n) / (n + p)) * std::pow(Ig, p / (n + p));
    };
    out.detail = optimize_over(ctx.psi.dim(), family, objective, p >= 0, kNaN);
    out.value = out.detail.value;

    VariationalResult og = orlicz_gm(OrliczFunction::power_p(p, n), F1, F2, ctx, family);
    out.via_orlicz = std::pow(std::sqrt(2 * M_PI), double(n) * p / (n + p)) *
                     std::pow(og.value, double(n) / (n + p));
    out.discrepancy = std::abs(out.value - out.via_orlicz) / std::max(std::abs(out.value), 1e-300);
    return out;
}

}  // namespace oas
