#pragma once

#include <string>
#include <vector>

#include "oas/mixed.hpp"
#include "oas/sconcave.hpp"
#include "oas/transforms.hpp"

namespace oas {

/// One verified statement: lhs `relation` rhs, with the signed margin and the
/// derived status. "flagged" is reserved for inequalities whose violation is
/// smaller than the optimizer slack (one-sided search bias), never for plain
/// numerical failures.
struct VerdictReport {
    std::string check_id;
    std::string statement;  // human-readable description of what is asserted
    double lhs = 0, rhs = 0;
    std::string relation;   // "<=", ">=", "==", "report"
    double tolerance = 0;
    double slack = 0;       // signed margin, >= -tolerance passes
    std::string status;     // pass / fail / flagged
    double runtime = 0;     // seconds; excluded from the serialized body

    std::string to_jsonl() const;  // one deterministic JSON line, no runtime
};

struct TestSuiteConfig {
    unsigned long long seed = 20260824ULL;
    int transform_count = 10;
    double tol_equality = 0.02;    // quadrature-dominated equality checks
    double tol_direction = 0.02;   // inequality direction slack
    double flag_margin = 0.10;     // optimizer-slack ceiling for "flagged"
    bool quick = false;            // trimmed roster for fast runs
};

/// Random T in SL_±(n): product of rotations, a shear, and diag(d, 1/d) with
/// a possible reflection; deterministic for a given seed and index.
Mat random_slpm(int n, unsigned long long seed, int index);

/// Randomized strictly convex potential: anisotropic quadratic plus smooth
/// convex bumps, realized as grid samples.
FunctionRep perturbed_potential(int n, unsigned long long seed);

/// Randomized even quartic potential admissible for the s = 1/2 shape class,
/// sampled on its support.
FunctionRep perturbed_s_potential(int n, unsigned long long seed);

/// quantity_id in {orlicz_as, orlicz_gm, asp_direct, gp, mixed_integral}:
/// value(psi o T) vs value(psi) for `count` seeded maps.
std::vector<VerdictReport> check_invariance(const std::string& quantity_id,
                                            const FunctionRep& psi, int count,
                                            unsigned long long seed,
                                            const TestSuiteConfig& cfg);

/// Blaschke-Santalo product after centering: I(F1 o psi_z) I(F2 o psi_z*) vs
/// I(F-breve, 1)^2; for F1 = F2 = e^{-t} the bound is (2 pi)^n.
VerdictReport check_bs(const FunctionRep& psi, const WeightFunction& F1,
                       const WeightFunction& F2, bool expect_equality,
                       const TestSuiteConfig& cfg, bool recenter = true);

/// Affine isoperimetric comparison against the matching quadratic reference
/// c-hat = (I(F-breve,1)/I(F2 o psi*))^{1/n}; direction depends on the class of h.
VerdictReport check_isoperimetric(const OrliczFunction& h, const WeightFunction& F1,
                                  const WeightFunction& F2, const FunctionRep& psi,
                                  bool expect_equality, const TestSuiteConfig& cfg);

/// Cyclic comparison as_h / I(F1 o psi) vs H(as_h1 / I(F1 o psi)) with
/// H = h o h1^{-1}; condition_tag in a..f picks the asserted direction.
VerdictReport check_cyclic(const OrliczFunction& h, const OrliczFunction& h1,
                           const WeightFunction& F1, const WeightFunction& F2,
                           const FunctionRep& psi, char condition_tag,
                           const TestSuiteConfig& cfg);

/// Santalo-type product G_p(psi) G_p(psi*) vs the quadratic reference squared;
/// asserted for p > 0, report-only for p < 0 (the constant is non-constructive).
VerdictReport check_santalo_product(double p, const WeightFunction& F1,
                                    const WeightFunction& F2, const FunctionRep& psi,
                                    bool expect_equality, const TestSuiteConfig& cfg);

/// s-concave batch: duality identities, the centered product bound against
/// omega_{n,s}^2, the isoperimetric comparison against the matching envelope,
/// the cyclic comparisons, and the G_p product.
std::vector<VerdictReport> check_sconcave_suite(const FunctionRep& psi, double s,
                                                bool expect_equality,
                                                const TestSuiteConfig& cfg);

/// Product bound of the joint quantity by the separately optimized singles,
/// plus the interpolation inequality for the two-function weighted variant.
std::vector<VerdictReport> check_af(const MixedSpec& spec, const TestSuiteConfig& cfg);

struct SuiteReport {
    std::vector<VerdictReport> reports;
    int failed = 0, flagged = 0;
    double total_runtime = 0;

    bool all_pass() const { return failed == 0; }
    std::string jsonl() const;  // header line + one line per report, by check_id
    std::string table() const;
};

SuiteReport run_suite(const TestSuiteConfig& cfg);

}  // namespace oas
