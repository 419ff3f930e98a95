#pragma once

#include "oas/orlicz.hpp"

namespace oas {

/// An s-concave function f = (1 - s psi)^{1/s} through its potential psi,
/// with the s-dual pair and dual-side regular set precomputed.
struct SConcaveContext {
    double s = 0;
    FunctionRep psi;
    SDualPair sp;         // holds the primal regular set + T / psi-tilde caches
    RegularSet dual_reg;  // regular set of the s-dual on its grid
    bool c2_interior = true;
    bool boundary_decay = true;  // (1-s psi)^{1/s - 1} stays bounded (s <= 1/2 shapes)

    int n() const { return psi.dim(); }
};

SConcaveContext make_s_context(const FunctionRep& psi, double s,
                               const std::optional<Grid>& grid = {},
                               const std::optional<Grid>& dual_grid = {});

/// V_h^{(s)}(psi, g) = integral of
///   h(g(T_psi) psi_tilde^{1/s-1} (1-s psi)) psi_tilde (1-s psi)^{1/s-1}.
double v_s(const OrliczFunction& h, const SConcaveContext& ctx, const PointFn& g);

/// Direct integral formula for as_p^{(s)}(psi).
IntegralResult asp_s_direct(double p, const SConcaveContext& ctx);

/// g1(y) = (1-s psi*(y))^{1/s-1} (1 + s<grad psi*(y), y> - s psi*(y)).
Candidate g1_witness(const SConcaveContext& ctx);

/// The same g1 through its primal-side identity g1(T_psi(x)) =
/// psi_tilde^{1-1/s} / (1-s psi); used to cross-check the two forms.
double g1_primal_form(const SConcaveContext& ctx, const Vec& x);

/// Equality witness of the variational formula (injected automatically).
Candidate g0_s_witness(double p, const SConcaveContext& ctx);

/// inf/sup of (1/(1+ns)) V_p^{(s)}(psi,g)^{n/(n+p)} I_s(g)^{p/(n+p)}.
VariationalResult asp_s_variational(double p, const SConcaveContext& ctx, CandidateFamily family);

/// Orlicz L_h^{(s)} affine surface area; candidates normalized so that
/// I_s(g, s-dual) = (1+ns) omega_{n,s}.
VariationalResult orlicz_as_s(const OrliczFunction& h, const SConcaveContext& ctx,
                              CandidateFamily family);
VariationalResult orlicz_gm_s(const OrliczFunction& h, const SConcaveContext& ctx,
                              CandidateFamily family);

/// G_p^{(s)}(psi); direct optimization cross-checked against the Orlicz route.
GpResult gp_s(double p, const SConcaveContext& ctx, CandidateFamily family);

}  // namespace oas
