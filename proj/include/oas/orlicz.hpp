#pragma once

#include <string>

#include "oas/orliczfn.hpp"
#include "oas/quadrature.hpp"

namespace oas {

/// Precomputed state shared by the affine/geominimal functionals: the primal
/// potential with its conjugate, plus regular sets on both sides so optimizer
/// objectives are cheap point sums.
struct OrliczContext {
    FunctionRep psi;
    Grid grid;       // primal integration window
    DualPair dp;
    RegularSet reg;      // primal regular set on grid
    RegularSet dual_reg;  // dual regular set on dp.dual_grid
};

OrliczContext make_context(const FunctionRep& psi, const std::optional<Grid>& grid = {},
                           const std::optional<Grid>& dual_grid = {});

struct Candidate {
    std::string name;
    PointFn g;            // dual-side form, evaluated at y
    bool logconcave = false;
};

/// Search space for the inner inf/sup. Fixed candidates are evaluated first;
/// the Gaussian chart g(y)=exp(-<B(y-mu),y-mu>/2), B=LL^t with exponentially
/// reparametrized diagonal, is then optimized by simplex search.
struct CandidateFamily {
    bool use_gaussian = true;
    bool use_perturbation = false;  // first fixed candidate times exp(quadratic)
    bool logconcave_only = false;
    std::vector<Candidate> fixed;

    static CandidateFamily standard() { return {}; }
    static CandidateFamily logconcave() {
        CandidateFamily f;
        f.logconcave_only = true;
        return f;
    }
};

struct VariationalResult {
    double value = 0;
    Vec argmin_params;        // empty when a fixed candidate won
    std::string winner;
    int iterations = 0;
    double bound_gap = std::numeric_limits<double>::quiet_NaN();
    bool converged = true;
};

/// V_{h,F1,F2}(psi, g) = integral of h(g(grad psi)/F2(<x,grad psi>-psi)) F1(psi).
double mixed_integral(const OrliczFunction& h, const WeightFunction& F1, const WeightFunction& F2,
                      const OrliczContext& ctx, const PointFn& g);

/// V_{p,F1,F2}(psi, g) = integral of (F2(...)/g(grad psi))^{p/n} F1(psi).
double vp(double p, const WeightFunction& F1, const WeightFunction& F2,
          const OrliczContext& ctx, const PointFn& g);

/// as_{p,F1,F2}(psi), the direct integral formula.
IntegralResult asp_direct(double p, const WeightFunction& F1, const WeightFunction& F2,
                          const OrliczContext& ctx);

/// The equality witness of the L_p variational formula, in its explicit
/// dual-side form g0(y) = [F1(<y,grad psi*>-psi*) F2(psi*)^{p/n} det hess psi*]^{n/(n+p)}.
Candidate g0_witness(double p, const WeightFunction& F1, const WeightFunction& F2,
                     const OrliczContext& ctx);

/// inf/sup of V_p(psi,g)^{n/(n+p)} I(g,psi*)^{p/(n+p)} over the family
/// (inf for p >= 0, sup for p < 0). Scale-invariant in g, so no normalization.
VariationalResult asp_variational(double p, const WeightFunction& F1, const WeightFunction& F2,
                                  const OrliczContext& ctx, const CandidateFamily& family);

/// Orlicz affine surface area: optimize V_h over g normalized so that
/// I(g, psi*) = target (default (sqrt(2 pi))^n). Phi -> inf, Psi -> sup.
VariationalResult orlicz_as(const OrliczFunction& h, const WeightFunction& F1,
                            const WeightFunction& F2, const OrliczContext& ctx,
                            CandidateFamily family, std::optional<double> target = {});

/// Geominimal variant: candidates restricted to log-concave g.
VariationalResult orlicz_gm(const OrliczFunction& h, const WeightFunction& F1,
                            const WeightFunction& F2, const OrliczContext& ctx,
                            CandidateFamily family, std::optional<double> target = {});

struct GpResult {
    double value = 0;         // direct optimization of the scale-invariant objective
    double via_orlicz = 0;    // (sqrt(2 pi))^{np/(n+p)} orlicz_gm(t^{-p/n})^{n/(n+p)}
    double discrepancy = 0;
    VariationalResult detail;
};

/// L_p geominimal surface area G_{p,F1,F2}(psi), two routes cross-checked.
GpResult gp(double p, const WeightFunction& F1, const WeightFunction& F2,
            const OrliczContext& ctx, CandidateFamily family);

/// Shared inner optimizer: evaluates the fixed candidates, then the Gaussian
/// (and optional perturbation) charts; minimize=false flips to a sup problem.
VariationalResult optimize_over(int dim, CandidateFamily family,
                                const std::function<double(const PointFn&)>& objective,
                                bool minimize, double reference);

}  // namespace oas
