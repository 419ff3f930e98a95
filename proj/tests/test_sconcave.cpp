#include <cmath>

#include "doctest.h"
#include "oas/sconcave.hpp"

using namespace oas;

TEST_CASE("the p = 0 direct value is the function volume") {
    SConcaveContext ctx = make_s_context(FunctionRep::s_envelope(0.5, 1.0, 1), 0.5);
    IntegralResult r = asp_s_direct(0.0, ctx);
    double vol = integral_f_s(ctx.sp).direct.value;
    CHECK(r.value == doctest::Approx(vol).epsilon(1e-3));
    CHECK(vol == doctest::Approx(omega_ns(1, 0.5)).epsilon(1e-3));
}

TEST_CASE("the dual-side and primal-side forms of the witness agree") {
    SConcaveContext ctx = make_s_context(FunctionRep::s_envelope(0.25, 1.2, 1), 0.25);
    Candidate g1 = g1_witness(ctx);
    for (size_t i = 0; i < ctx.sp.reg.size(); i += 7) {
        const Vec& x = ctx.sp.reg.points[i];
        double dual_form = g1.g(ctx.sp.tmap_samples[i]);
        double primal_form = g1_primal_form(ctx, x);
        CHECK(dual_form == doctest::Approx(primal_form).epsilon(1e-6));
    }
}

TEST_CASE("normalized quantity of the model envelope follows the scaling law") {
    OrliczFunction h = OrliczFunction::power(-1.0);
    for (double s : {0.25, 0.5}) {
        for (double c : {0.5, 2.0}) {
            SConcaveContext ctx = make_s_context(FunctionRep::s_envelope(s, c, 1), s);
            VariationalResult r = orlicz_as_s(h, ctx, CandidateFamily::standard());
            double w = omega_ns(1, s);
            double expect = (1 + s) * (1 / c) * h(1 / c) * w;  // n = 1
            CHECK(r.value == doctest::Approx(expect).epsilon(0.02));
        }
    }
}

TEST_CASE("variational value with the injected witness matches the direct integral") {
    SConcaveContext ctx = make_s_context(FunctionRep::s_envelope(0.5, 1.3, 1), 0.5);
    for (double p : {1.0, 2.0}) {
        double direct = asp_s_direct(p, ctx).value;
        VariationalResult v = asp_s_variational(p, ctx, CandidateFamily::standard());
        CHECK(v.value == doctest::Approx(direct).epsilon(0.02));
    }
}

TEST_CASE("geominimal scaling of the model envelope") {
    double s = 0.5, p = 1.0;
    int n = 1;
    for (double c : {0.5, 1.0, 2.0}) {
        SConcaveContext ctx = make_s_context(FunctionRep::s_envelope(s, c, n), s);
        GpResult r = gp_s(p, ctx, CandidateFamily::logconcave());
        double expect = std::pow(c, n * (p - n) / double(n + p)) * omega_ns(n, s);
        CHECK(r.value == doctest::Approx(expect).epsilon(0.02));
        CHECK(r.discrepancy < 0.01);
    }
}
