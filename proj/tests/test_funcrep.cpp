#include <cmath>

#include "doctest.h"
#include "oas/funcrep.hpp"

using namespace oas;

namespace {
Mat mat2(double a, double b, double c, double d) {
    Mat M(2, 2);
    M << a, b, c, d;
    return M;
}
}  // namespace

TEST_CASE("quadratic potential: value, gradient, hessian") {
    // psi(x) = <Ax,x> + a, so grad = 2Ax and hess = 2A
    Mat A = mat2(1.0, 0.25, 0.25, 2.0);
    FunctionRep psi = FunctionRep::quadratic(A, 0.5);
    Vec x(2);
    x << 1.0, -2.0;
    CHECK(psi.eval(x) == doctest::Approx(x.dot(A * x) + 0.5));
    CHECK((psi.gradient(x) - 2 * A * x).norm() == doctest::Approx(0.0));
    CHECK((psi.hessian(x) - 2 * A).norm() == doctest::Approx(0.0));
}

TEST_CASE("gaussian potential matches its quadratic form") {
    FunctionRep psi = FunctionRep::gaussian(2.0, 2);
    Vec x(2);
    x << 0.3, -0.4;
    CHECK(psi.eval(x) == doctest::Approx(4.0 * x.squaredNorm() / 2));
    CHECK((psi.gradient(x) - 4.0 * x).norm() == doctest::Approx(0.0));
}

TEST_CASE("shape-class envelope: interior values and support boundary") {
    double s = 0.5, c = 1.0;
    FunctionRep psi = FunctionRep::s_envelope(s, c, 1);
    Vec x0 = Vec::Zero(1);
    CHECK(psi.eval(x0) == doctest::Approx(0.0));
    Vec xi(1);
    xi << 0.5;
    double expect = (1 - std::sqrt(1 - s * 0.25)) / s;
    CHECK(psi.eval(xi) == doctest::Approx(expect));
    Vec xb(1);
    xb << 2.0;  // outside |x| < 1/(c sqrt(s)) = sqrt(2)
    CHECK(std::isinf(psi.eval(xb)));
}

TEST_CASE("affine composition folds exactly for quadratics") {
    Mat A = mat2(1.2, 0.1, 0.1, 0.7);
    FunctionRep psi = FunctionRep::quadratic(A, -0.25);
    Mat T = mat2(0.0, 1.0, -1.0, 0.3);
    FunctionRep comp = psi.compose(T);
    CHECK(comp.closed_form());
    CHECK_FALSE(comp.has_affine());  // folded into the quadratic form
    Vec x(2);
    x << 0.7, -1.1;
    CHECK(comp.eval(x) == doctest::Approx(psi.eval(T * x)));
    CHECK((comp.gradient(x) - T.transpose() * psi.gradient(T * x)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("translation shifts the argument") {
    FunctionRep psi = FunctionRep::gaussian(1.0, 1);
    Vec z(1);
    z << 0.4;
    FunctionRep t = psi.translate(z);
    Vec x(1);
    x << 1.0;
    CHECK(t.eval(x) == doctest::Approx(psi.eval(x + z)));
}

TEST_CASE("sampled representation evaluates its own nodes exactly") {
    Grid g = Grid::cube(1, 2.0, 9);
    FunctionRep base = FunctionRep::gaussian(1.0, 1);
    std::vector<double> vals;
    for (long i = 0; i < g.total(); ++i) vals.push_back(base.eval(g.point(i)));
    FunctionRep f = FunctionRep::sampled(g, vals);
    CHECK_FALSE(f.closed_form());
    for (long i = 0; i < g.total(); ++i)
        CHECK(f.eval(g.point(i)) == doctest::Approx(vals[size_t(i)]));
}

TEST_CASE("regular set drops nodes outside the effective domain") {
    FunctionRep psi = FunctionRep::s_envelope(0.5, 1.0, 1);
    Grid g = Grid::cube(1, 3.0, 41);  // support radius is sqrt(2) < 3
    RegularSet rs = regular_set(psi, g);
    CHECK(rs.size() > 0);
    CHECK(long(rs.size()) < g.total());
    for (const Vec& x : rs.points) CHECK(std::abs(x[0]) < std::sqrt(2.0) + 1e-9);
    // total quadrature weight tracks the support volume (boundary cells are
    // subsampled at finite resolution, so allow a small overshoot)
    double w = 0;
    for (double wi : rs.weights) w += wi;
    CHECK(w == doctest::Approx(2 * std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("default sampling window adapts to the representation") {
    CHECK(default_window(FunctionRep::s_envelope(0.5, 1.0, 1)).upper[0] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    Grid g = Grid::cube(2, 1.5, 11);
    std::vector<double> vals(size_t(g.total()), 0.0);
    FunctionRep f = FunctionRep::sampled(g, vals);
    CHECK(default_window(f).lower[1] == doctest::Approx(-1.5));
}
