#pragma once

#include <optional>

#include "oas/funcrep.hpp"
#include "oas/weightfn.hpp"

namespace oas {

/// A convex potential together with its Legendre conjugate. The dual is
/// analytic when the primal admits a closed-form conjugate, otherwise it is
/// sampled on dual_grid.
struct DualPair {
    FunctionRep primal;
    FunctionRep dual;
    Grid dual_grid;
    double involution_error = 0;  // sup |psi** - psi| on the overlap
};

/// An s-concave potential with its s-dual, plus cached T_psi and psi-tilde
/// samples over the primal regular set (reused by the s-concave quadratures).
struct SDualPair {
    double s = 0;
    FunctionRep primal;
    FunctionRep dual;
    Grid dual_grid;
    RegularSet reg;
    std::vector<Vec> tmap_samples;       // T_psi(x) = grad psi / psi_tilde
    std::vector<double> psitilde_samples;  // 1 + s<x, grad psi> - s psi
    double involution_error = 0;
};

struct DualOptions {
    std::optional<Grid> primal_grid;  // sampling window for closed-form input
    std::optional<Grid> dual_grid;    // auto-sized from gradient range if absent
    bool force_discrete = false;      // skip analytic shortcuts (for testing)
    bool compute_involution = true;   // the double-dual pass is O(N*M)
};

/// psi*(y) = sup_x <x,y> - psi(x). Discrete path is a direct max over primal
/// samples, O(N*M); auto dual grid spans the sampled gradient range plus 10%.
DualPair legendre(const FunctionRep& psi, const DualOptions& opt = {});

/// Potential of the polar dual f° of f = e^{-psi}; same as legendre(psi).dual.
FunctionRep polar_dual(const FunctionRep& psi, const DualOptions& opt = {});

/// s-dual: psi*_(s)(y) = sup over the support of (<x,y> - psi(x)) / (1 - s psi(x)).
SDualPair s_dual(const FunctionRep& psi, double s, const DualOptions& opt = {});

/// T_psi(x) = grad psi(x) / psi_tilde(x); c^2 x analytically for envelopes.
Vec t_map(const SDualPair& pair, const Vec& x);

/// F-breve(t) = sup over (t1+t2)/2 >= t of sqrt(F1(t1) F2(t2)), tabulated on
/// [t_lo, t_hi] and forced non-increasing.
WeightFunction breve(const WeightFunction& F1, const WeightFunction& F2,
                     double t_lo, double t_hi, int resolution);

struct CenterResult {
    Vec z0;
    FunctionRep centered;  // psi_{z0}(x) = psi(x + z0)
    double objective = 0;  // I(F2 o (psi_{z0})*) at the minimizer
};

/// Picks z0 minimizing z -> I(F2 o (psi_z)*) via simplex search from 0,
/// using (psi_z)*(y) = psi*(y) - <z,y> so the dual is conjugated only once.
CenterResult santalo_center(const FunctionRep& psi, const WeightFunction& F1,
                            const WeightFunction& F2, const DualOptions& opt = {});

}  // namespace oas
