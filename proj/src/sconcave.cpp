#include "oas/sconcave.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace oas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double psi_tilde_at(const RegularSet& rs, size_t i, double s) {
    return 1 + s * rs.points[i].dot(rs.gradients[i]) - s * rs.values[i];
}

/// Cheap V_h^{(s)} sum over a prebuilt regular set.
double vs_sum(const OrliczFunction& h, const RegularSet& rs, double s, const PointFn& g) {
    std::atomic<long> valid{0};
    double v = sum_regular(
        rs,
        [&](size_t i) {
            double q = 1 - s * rs.values[i];
            double pt = psi_tilde_at(rs, i, s);
            if (!(q > 0) || !(pt > 0)) return 0.0;
            Vec t = rs.gradients[i] / pt;
            double arg = g(t) * std::pow(pt, 1 / s - 1) * q;
            if (!(arg > 0) || !std::isfinite(arg)) return 0.0;
            ++valid;
            return h(arg) * pt * std::pow(q, 1 / s - 1);
        },
        true);
    if (valid == 0) throw std::runtime_error("v_s: candidate nonpositive on the whole regular set");
    return v;
}

double vps_sum(double p, const RegularSet& rs, double s, const PointFn& g, int n) {
    return vs_sum(OrliczFunction::power_p(p, n), rs, s, g);
}

double dual_mass_s(const RegularSet& dual_reg, const PointFn& g) {
    return sum_regular(
        dual_reg,
        [&](size_t i) {
            double v = g(dual_reg.points[i]);
            return std::isfinite(v) && v > 0 ? v : 0.0;
        },
        true);
}

/// Lift a primal-form candidate G(x) = g(T_psi(x)) to a dual-side function:
/// x is recovered from y through T_{psi*} = T_psi^{-1}.
PointFn lift_primal_form(const FunctionRep& dual, double s,
                         const std::function<double(const Vec&)>& G) {
    return [dual, s, G](const Vec& y) -> double {
        double vstar = dual.eval(y);
        if (!std::isfinite(vstar)) return 0.0;
        Vec gstar;
        try {
            gstar = dual.gradient(y);
        } catch (const std::exception&) {
            return 0.0;
        }
        double pt = 1 + s * y.dot(gstar) - s * vstar;
        if (!(pt > 0)) return 0.0;
        return G(gstar / pt);
    };
}

}  // namespace

SConcaveContext make_s_context(const FunctionRep& psi, double s,
                               const std::optional<Grid>& grid,
                               const std::optional<Grid>& dual_grid) {
    SConcaveContext ctx;
    ctx.s = s;
    ctx.psi = psi;
    DualOptions opt;
    opt.primal_grid = grid;
    opt.dual_grid = dual_grid;
    opt.compute_involution = false;
    ctx.sp = s_dual(psi, s, opt);
    ctx.dual_reg = regular_set(ctx.sp.dual, ctx.sp.dual_grid);
    ctx.c2_interior = psi.closed_form();
    ctx.boundary_decay = s <= 0.5 + 1e-12;
    return ctx;
}

double v_s(const OrliczFunction& h, const SConcaveContext& ctx, const PointFn& g) {
    return vs_sum(h, ctx.sp.reg, ctx.s, g);
}

IntegralResult asp_s_direct(double p, const SConcaveContext& ctx) {
    const int n = ctx.n();
    const double s = ctx.s;
    if (p == -n) throw std::invalid_argument("asp_s_direct: p = -n is excluded");
    double denom_exp = (p / (n + p)) * (n + 1 / s + 1) - 1;
    IntegralResult r = integrate_regular(
        ctx.psi, ctx.sp.reg.grid,
        [&](const RegularSet& rs, size_t i) {
            double q = 1 - s * rs.values[i];
            double pt = psi_tilde_at(rs, i, s);
            if (!(q > 0) || !(pt > 0)) return 0.0;
            return std::pow(q, (1 / s - 1) * n / (n + p)) * std::pow(rs.hess_dets[i], p / (n + p)) /
                   std::pow(pt, denom_exp);
        },
        true);
    r.value /= (1 + n * s);
    r.est_error /= (1 + n * s);
    r.clipped /= (1 + n * s);
    return r;
}

Candidate g1_witness(const SConcaveContext& ctx) {
    const double s = ctx.s;
    FunctionRep dual = ctx.sp.dual;
    Candidate c;
    c.name = "g1";
    c.logconcave = s <= 0.5 + 1e-12;  // the envelope-shape condition of the dual form
    c.g = [dual, s](const Vec& y) -> double {
        double v = dual.eval(y);
        if (!std::isfinite(v)) return 0.0;
        double q = 1 - s * v;
        if (!(q > 0)) return 0.0;
        Vec grad;
        try {
            grad = dual.gradient(y);
        } catch (const std::exception&) {
            return 0.0;
        }
        double pt = 1 + s * grad.dot(y) - s * v;
        if (!(pt > 0)) return 0.0;
        return std::pow(q, 1 / s - 1) * pt;
    };
    return c;
}

double g1_primal_form(const SConcaveContext& ctx, const Vec& x) {
    const double s = ctx.s;
    double v = ctx.psi.eval(x);
    if (!std::isfinite(v)) throw std::domain_error("g1 primal form: outside support");
    double q = 1 - s * v;
    Vec g = ctx.psi.gradient(x);
    double pt = 1 + s * x.dot(g) - s * v;
    if (!(q > 0) || !(pt > 0)) throw std::domain_error("g1 primal form: degenerate point");
    return std::pow(pt, 1 - 1 / s) / q;
}

Candidate g0_s_witness(double p, const SConcaveContext& ctx) {
    const int n = ctx.n();
    const double s = ctx.s;
    if (p == -n) throw std::invalid_argument("g0_s_witness: p = -n is excluded");
    // primal form solving h(g T~) psi_tilde q^{1/s-1} = as_p^{(s)} integrand
    FunctionRep psi = ctx.psi;
    auto G = [psi, s, n, p](const Vec& x) -> double {
        double v = psi.eval(x);
        if (!std::isfinite(v)) return 0.0;
        double q = 1 - s * v;
        if (!(q > 0)) return 0.0;
        Vec g;
        Mat H;
        try {
            g = psi.gradient(x);
            H = psi.hessian(x);
        } catch (const std::exception&) {
            return 0.0;
        }
        double pt = 1 + s * x.dot(g) - s * v;
        double det = H.determinant();
        if (!(pt > 0) || !(det > 0)) return 0.0;
        double qexp = (1 / s - 1) * double(n) / (n + p) - 1;
        double ptexp = (double(n) / (n + p)) * (n + 1 / s + 1) - (1 / s - 1);
        return std::pow(q, qexp) * std::pow(det, -double(n) / (n + p)) * std::pow(pt, ptexp);
    };
    Candidate c;
    c.name = "g0s";
    c.g = lift_primal_form(ctx.sp.dual, s, G);
    return c;
}

VariationalResult asp_s_variational(double p, const SConcaveContext& ctx, CandidateFamily family) {
    const int n = ctx.n();
    const double s = ctx.s;
    if (p == -n) throw std::invalid_argument("asp_s_variational: p = -n is excluded");
    family.fixed.insert(family.fixed.begin(), g0_s_witness(p, ctx));
    auto objective = [&](const PointFn& g) {
        double V = vps_sum(p, ctx.sp.reg, s, g, n);
        double Ig = dual_mass_s(ctx.dual_reg, g);
        if (!(V > 0) || !(Ig > 0)) throw std::runtime_error("degenerate candidate");
        return std::pow(V, double(n) / (n + p)) * std::pow(Ig, p / (n + p)) / (1 + n * s);
    };
    double reference = asp_s_direct(p, ctx).value;
    return optimize_over(n, family, objective, p >= 0, reference);
}

namespace {

VariationalResult orlicz_opt_s(const OrliczFunction& h, const SConcaveContext& ctx,
                               CandidateFamily family) {
    const int n = ctx.n();
    const double target = (1 + n * ctx.s) * omega_ns(n, ctx.s);
    family.fixed.insert(family.fixed.begin(), g1_witness(ctx));
    auto objective = [&](const PointFn& g) {
        double Ig = dual_mass_s(ctx.dual_reg, g);
        if (!(Ig > 0)) throw std::runtime_error("candidate has zero dual mass");
        double tau = target / Ig;
        return vs_sum(h, ctx.sp.reg, ctx.s, [&](const Vec& y) { return tau * g(y); });
    };
    return optimize_over(n, family, objective, h.is_inf_problem(), kNaN);
}

}  // namespace

VariationalResult orlicz_as_s(const OrliczFunction& h, const SConcaveContext& ctx,
                              CandidateFamily family) {
    return orlicz_opt_s(h, ctx, std::move(family));
}

VariationalResult orlicz_gm_s(const OrliczFunction& h, const SConcaveContext& ctx,
                              CandidateFamily family) {
    family.logconcave_only = true;
    family.use_perturbation = false;
    return orlicz_opt_s(h, ctx, std::move(family));
}

GpResult gp_s(double p, const SConcaveContext& ctx, CandidateFamily family) {
    const int n = ctx.n();
    const double s = ctx.s;
    if (p == -n) throw std::invalid_argument("gp_s: p = -n is excluded");
    family.logconcave_only = true;
    family.use_perturbation = false;
    CandidateFamily fam2 = family;
    fam2.fixed.insert(fam2.fixed.begin(), g1_witness(ctx));

    GpResult out;
    auto objective = [&](const PointFn& g) {
        double V = vps_sum(p, ctx.sp.reg, s, g, n);
        double Ig = dual_mass_s(ctx.dual_reg, g);
        if (!(V > 0) || !(Ig > 0)) throw std::runtime_error("degenerate candidate");
        return std::pow(V, double(n) / (n + p)) * std::pow(Ig, p / (n + p)) / (1 + n * s);
    };
    out.detail = optimize_over(n, fam2, objective, p >= 0, kNaN);
    out.value = out.detail.value;

    VariationalResult og = orlicz_gm_s(OrliczFunction::power_p(p, n), ctx, family);
    out.via_orlicz = std::pow(omega_ns(n, s), p / double(n + p)) *
                     std::pow(og.value / (1 + n * s), double(n) / (n + p));
    out.discrepancy = std::abs(out.value - out.via_orlicz) / std::max(std::abs(out.value), 1e-300);
    return out;
}

}  // namespace oas
