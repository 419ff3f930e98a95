#pragma once

#include <functional>
#include <optional>

#include "json.hpp"
#include "oas/transforms.hpp"
#include "oas/weightfn.hpp"

namespace oas {

struct IntegralResult {
    double value = 0;
    double est_error = 0;        // one grid-halving Richardson comparison
    double truncation_radius = 0;
    long points_used = 0;
    double clipped = 0;          // mass removed by the boundary blow-up clip

    nlohmann::json to_json() const {
        return {{"value", value},
                {"est_error", est_error},
                {"truncation_radius", truncation_radius},
                {"points_used", points_used}};
    }
};

using PointFn = std::function<double(const Vec&)>;

enum class DualMode { DualSide, Pushforward, Both };

/// Weighted midpoint sum of term(i) over a prebuilt regular set, with the
/// relative truncation rule and (optionally) the boundary blow-up clip.
/// The cheap building block for optimizer objectives.
double sum_regular(const RegularSet& rs, const std::function<double(size_t)>& term, bool clip = false);

/// Same sum with a one-halving Richardson error estimate (rebuilds the
/// regular set on the refined grid).
IntegralResult integrate_regular(const FunctionRep& psi, const Grid& grid,
                                 const std::function<double(const RegularSet&, size_t)>& term,
                                 bool clip = false);

/// I(F o psi, psi) = integral of F(psi(x)) over the regular set; midpoint sum.
IntegralResult integrate_weight(const WeightFunction& F, const FunctionRep& psi, const Grid& grid);

/// I(g, psi*): dual side integrates g(y) over X_{psi*}; pushforward integrates
/// g(grad psi) det(hess psi) over X_psi. Both cross-checks the two.
IntegralResult integrate_dual(const PointFn& g, const DualPair& pair, DualMode mode,
                              const std::optional<Grid>& primal_grid = {});

/// I(F, c) = integral of F(c^2 |x|^2 / 2) over R^n via a 1-D radial rule.
/// trunc_t overrides the automatic tail cutoff (in t-units); needed when F
/// does not decay.
IntegralResult radial_integral(const WeightFunction& F, double c, int n,
                               std::optional<double> trunc_t = {});

/// Volume constant of the s-concave model function k_s.
double omega_ns(int n, double s);

/// I_s(g): dual side integrates g over X of the s-dual; pushforward uses the
/// change of variables y = T_psi(x) with Jacobian (1-s psi) det(hess) / psi_tilde^{n+1}.
IntegralResult integrate_s(const PointFn& g, const SDualPair& sp, DualMode mode);

struct FIntegral {
    IntegralResult direct;        // integral of (1 - s psi)^{1/s}
    IntegralResult via_identity;  // integral of (1 - s psi)^{1/s - 1} psi_tilde, / (1+ns)
    double discrepancy = 0;
};

/// I(f) for the s-concave f = (1 - s psi)^{1/s}, computed two ways.
FIntegral integral_f_s(const SDualPair& sp);

}  // namespace oas
