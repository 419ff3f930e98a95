#include <cmath>

#include "doctest.h"
#include "oas/transforms.hpp"

using namespace oas;

TEST_CASE("conjugate of a quadratic is the quarter inverse form") {
    Mat A(2, 2);
    A << 1.0, 0.0, 0.0, 2.0;
    FunctionRep psi = FunctionRep::quadratic(A, 0.3);
    DualPair dp = legendre(psi);
    CHECK(dp.dual.closed_form());
    Mat Ainv = A.inverse();
    Vec y(2);
    y << 1.0, -0.5;
    CHECK(dp.dual.eval(y) == doctest::Approx(0.25 * y.dot(Ainv * y) - 0.3));
    CHECK(dp.involution_error == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("the standard gaussian potential is self-conjugate") {
    FunctionRep psi = FunctionRep::gaussian(1.0, 2);
    DualPair dp = legendre(psi);
    Vec y(2);
    y << 0.7, 0.2;
    CHECK(dp.dual.eval(y) == doctest::Approx(psi.eval(y)));
}

TEST_CASE("discrete conjugation approximates the closed form") {
    Mat A(1, 1);
    A << 0.8;
    FunctionRep psi = FunctionRep::quadratic(A, 0.0);
    DualOptions opt;
    opt.primal_grid = Grid::cube(1, 6.0, 241);
    opt.force_discrete = true;
    DualPair dp = legendre(psi, opt);
    CHECK_FALSE(dp.dual.closed_form());
    // compare on the interior of the dual window
    for (double yv : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        Vec y(1);
        y << yv;
        CHECK(dp.dual.eval(y) == doctest::Approx(yv * yv / 3.2).epsilon(5e-3));
    }
    CHECK(dp.involution_error < 2 * 12.0 / 240);
}

TEST_CASE("envelope duality swaps the scale") {
    // the s-dual of the scale-c envelope is the scale-1/c envelope
    double s = 0.5, c = 2.0;
    SDualPair sp = s_dual(FunctionRep::s_envelope(s, c, 1), s);
    FunctionRep expect = FunctionRep::s_envelope(s, 1 / c, 1);
    for (double yv : {0.0, 0.5, 1.5, 2.5}) {
        Vec y(1);
        y << yv;
        double a = sp.dual.eval(y), b = expect.eval(y);
        if (std::isinf(b)) {
            CHECK(std::isinf(a));
        } else {
            CHECK(a == doctest::Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("the transport map of an envelope is linear") {
    double s = 0.5, c = 1.5;
    SDualPair sp = s_dual(FunctionRep::s_envelope(s, c, 1), s);
    Vec x(1);
    x << 0.3;
    CHECK(t_map(sp, x)[0] == doctest::Approx(c * c * 0.3).epsilon(1e-9));
}

TEST_CASE("geometric-mean envelope of two exponential weights is exponential") {
    WeightFunction F = breve(WeightFunction::exp_neg(), WeightFunction::exp_neg(), -2, 40, 2049);
    for (double t : {0.0, 0.5, 1.0, 3.0, 10.0}) CHECK(F(t) == doctest::Approx(std::exp(-t)).epsilon(1e-3));
}

TEST_CASE("centering recovers the translation of a shifted gaussian") {
    Vec v(1);
    v << 0.6;
    FunctionRep shifted = FunctionRep::gaussian(1.0, 1).translate(-v);  // psi(x - v), peak at v
    CenterResult cr = santalo_center(shifted, WeightFunction::exp_neg(), WeightFunction::exp_neg());
    CHECK(cr.z0[0] == doctest::Approx(0.6).epsilon(0.02));
    Vec x(1);
    x << 0.1;
    CHECK(cr.centered.eval(x) == doctest::Approx(shifted.eval(x + cr.z0)));
}
