#include "doctest.h"
#include "oas/grid.hpp"

using namespace oas;

TEST_CASE("grid nodes are row-major and span the box endpoints") {
    Grid g = Grid::cube(2, 1.0, 5);
    CHECK(g.total() == 25);
    CHECK(g.point(0)[0] == doctest::Approx(-1.0));
    CHECK(g.point(0)[1] == doctest::Approx(-1.0));
    // last index varies fastest
    CHECK(g.point(1)[0] == doctest::Approx(-1.0));
    CHECK(g.point(1)[1] == doctest::Approx(-0.5));
    CHECK(g.point(24)[0] == doctest::Approx(1.0));
    CHECK(g.point(24)[1] == doctest::Approx(1.0));
}

TEST_CASE("spacing and cell volume are consistent") {
    Vec lo(2), hi(2);
    lo << -1, 0;
    hi << 1, 4;
    Grid g = Grid::box(lo, hi, 5);
    CHECK(g.spacing()[0] == doctest::Approx(0.5));
    CHECK(g.spacing()[1] == doctest::Approx(1.0));
    CHECK(g.cell_volume() == doctest::Approx(0.5));
}

TEST_CASE("refinement halves the spacing and keeps the endpoints") {
    Grid g = Grid::cube(1, 2.0, 9);
    Grid r = g.refined();
    CHECK(r.counts[0] == 17);
    CHECK(r.spacing()[0] == doctest::Approx(g.spacing()[0] / 2));
    CHECK(r.point(0)[0] == doctest::Approx(g.point(0)[0]));
    CHECK(r.point(16)[0] == doctest::Approx(g.point(8)[0]));
}

TEST_CASE("degenerate boxes and tiny counts are rejected") {
    Vec lo = Vec::Zero(1), hi = Vec::Zero(1);
    CHECK_THROWS_AS(Grid(lo, hi, {9}), std::invalid_argument);
    CHECK_THROWS_AS(Grid::cube(1, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Grid(Vec::Zero(2), Vec::Ones(1), {9}), std::invalid_argument);
}
