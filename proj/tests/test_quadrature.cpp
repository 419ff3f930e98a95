#include <cmath>

#include "doctest.h"
#include "oas/quadrature.hpp"
#include "oas/transforms.hpp"

using namespace oas;

namespace {
const double kSqrt2Pi = std::sqrt(2 * M_PI);
}

TEST_CASE("radial integral of the gaussian weight is (sqrt 2 pi)^n / c^n") {
    for (int n : {1, 2, 3}) {
        IntegralResult r = radial_integral(WeightFunction::exp_neg(), 1.0, n);
        CHECK(r.value == doctest::Approx(std::pow(kSqrt2Pi, n)).epsilon(1e-6));
    }
    IntegralResult r2 = radial_integral(WeightFunction::exp_neg(), 2.0, 2);
    CHECK(r2.value == doctest::Approx(2 * M_PI / 4).epsilon(1e-6));
}

TEST_CASE("radial integrals scale with c^{-n} for every built-in weight") {
    std::vector<WeightFunction> Fs{WeightFunction::exp_neg(), WeightFunction::power(3.0)};
    for (const WeightFunction& F : Fs) {
        for (int n : {1, 2}) {
            double base = radial_integral(F, 1.0, n).value;
            for (double c : {0.5, 2.0, 3.0}) {
                double v = radial_integral(F, c, n).value;
                CHECK(v == doctest::Approx(std::pow(c, -n) * base).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("grid integral of the gaussian matches the radial rule") {
    FunctionRep psi = FunctionRep::gaussian(1.0, 2);
    IntegralResult r = integrate_weight(WeightFunction::exp_neg(), psi, Grid::cube(2, 6.0, 121));
    CHECK(r.value == doctest::Approx(2 * M_PI).epsilon(1e-4));
    CHECK(r.est_error < 1e-3);
}

TEST_CASE("dual-side and pushforward integrals agree") {
    Mat A(2, 2);
    A << 0.9, 0.2, 0.2, 1.3;
    DualPair dp = legendre(FunctionRep::quadratic(A, 0.0));
    FunctionRep dual = dp.dual;
    PointFn g = [&](const Vec& y) { return std::exp(-dual.eval(y)); };
    double a = integrate_dual(g, dp, DualMode::DualSide).value;
    double b = integrate_dual(g, dp, DualMode::Pushforward).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
    // the combined mode's internal cross-check needs a finer primal window
    Mat A1(1, 1);
    A1 << 0.8;
    DualOptions opt;
    opt.primal_grid = Grid::cube(1, 6.0, 161);
    DualPair dp1 = legendre(FunctionRep::quadratic(A1, 0.0), opt);
    FunctionRep dual1 = dp1.dual;
    PointFn g1 = [&](const Vec& y) { return std::exp(-dual1.eval(y)); };
    CHECK_NOTHROW(integrate_dual(g1, dp1, DualMode::Both));
}

TEST_CASE("volume constant of the model shape") {
    // n = 1, s = 1/2: the half-circle profile integrates to 4 sqrt(2) / 3
    CHECK(omega_ns(1, 0.5) == doctest::Approx(4 * std::sqrt(2.0) / 3).epsilon(1e-10));
    // s -> 0 limit approaches the gaussian mass
    CHECK(omega_ns(2, 1e-6) == doctest::Approx(2 * M_PI).epsilon(1e-4));
}

TEST_CASE("the two routes to the shape-class volume agree") {
    SDualPair sp = s_dual(FunctionRep::s_envelope(0.5, 1.0, 1), 0.5);
    FIntegral fi = integral_f_s(sp);
    CHECK(fi.direct.value == doctest::Approx(omega_ns(1, 0.5)).epsilon(1e-3));
    CHECK(fi.discrepancy < 1e-3);
}

TEST_CASE("richardson estimate brackets the true truncation-free error") {
    FunctionRep psi = FunctionRep::gaussian(1.0, 1);
    IntegralResult r = integrate_weight(WeightFunction::exp_neg(), psi, Grid::cube(1, 8.0, 81));
    CHECK(std::abs(r.value - kSqrt2Pi) < 10 * r.est_error + 1e-9);
}
