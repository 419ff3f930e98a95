#pragma once

#include "oas/orlicz.hpp"

namespace oas {

/// m-tuple input for the mixed functionals. All h's must belong to the same
/// class (all Phi or all Psi) and all potentials must share one dimension.
struct MixedSpec {
    std::vector<FunctionRep> psis;
    std::vector<OrliczFunction> hs;
    std::vector<WeightFunction> F1s, F2s;

    int m() const { return int(psis.size()); }
};

/// Shared evaluation state: the common regular set (points where every psi_j
/// is finite with an invertible Hessian) plus one single-function context per
/// component for the dual-mass normalizations.
struct MixedContext {
    MixedSpec spec;
    Grid grid;
    std::vector<Vec> points;
    std::vector<double> weights;
    std::vector<std::vector<double>> values;  // [component][point]
    std::vector<std::vector<Vec>> gradients;  // [component][point]
    std::vector<OrliczContext> singles;

    int m() const { return spec.m(); }
    int n() const { return spec.psis.empty() ? 0 : spec.psis.front().dim(); }
};

MixedContext make_mixed_context(const MixedSpec& spec, const std::optional<Grid>& grid = {});

/// V over the common domain of prod_i [h_i(g_i(grad psi_i)/F2_i(...)) F1_i(psi_i)]^{1/m}.
double mixed_v(const MixedContext& ctx, const std::vector<PointFn>& gs);

/// Joint inf/sup over (g_1,...,g_m), each normalized to I(g_i, psi_i*) = (sqrt(2 pi))^n.
VariationalResult mixed_orlicz_as(const MixedContext& ctx, const CandidateFamily& family);
VariationalResult mixed_orlicz_gm(const MixedContext& ctx, CandidateFamily family);

/// Two-component variant with exponents (n-i)/n and i/n, 0 <= i <= n.
double ith_mixed_v(const MixedContext& ctx, int i, const std::vector<PointFn>& gs);
VariationalResult ith_mixed_as(const MixedContext& ctx, int i, const CandidateFamily& family);
VariationalResult ith_mixed_gm(const MixedContext& ctx, int i, CandidateFamily family);

}  // namespace oas
