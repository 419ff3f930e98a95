#include "oas/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace oas {

namespace {

using Clock = std::chrono::steady_clock;

double sqrt2pi_pow(int n) { return std::pow(std::sqrt(2 * M_PI), n); }

double rel_scale(double a, double b) { return std::max({std::abs(a), std::abs(b), 1e-300}); }

/// Derives status from the signed margin. allow_flag marks checks whose sides
/// come from one-sided optimization, where a small violation is slack, not a
/// wrong answer.
VerdictReport make_report(std::string id, std::string statement, double lhs, double rhs,
                          const std::string& relation, double tol, double flag_margin = 0) {
    VerdictReport r;
    r.check_id = std::move(id);
    r.statement = std::move(statement);
    r.lhs = lhs;
    r.rhs = rhs;
    r.relation = relation;
    r.tolerance = tol;
    double scale = rel_scale(lhs, rhs);
    if (relation == "<=")
        r.slack = (rhs - lhs) / scale;
    else if (relation == ">=")
        r.slack = (lhs - rhs) / scale;
    else if (relation == "==")
        r.slack = tol - std::abs(lhs - rhs) / scale;
    else
        r.slack = 0;  // report-only
    if (relation == "report")
        r.status = "pass";
    else if (relation == "==")
        r.status = r.slack >= 0 ? "pass" : "fail";
    else if (r.slack >= -tol)
        r.status = "pass";
    else if (flag_margin > 0 && r.slack >= -flag_margin)
        r.status = "flagged";
    else
        r.status = "fail";
    return r;
}

/// Axis-aligned bounding box of T^{-1} applied to the corners of `base`, so a
/// composed potential is integrated over the pre-image of the base window.
Grid composed_window(const Grid& base, const Mat& T) {
    Mat Tinv = T.inverse();
    const int n = base.dim;
    Vec lo = Vec::Constant(n, kInf), hi = Vec::Constant(n, -kInf);
    for (long mask = 0; mask < (1L << n); ++mask) {
        Vec corner(n);
        for (int j = 0; j < n; ++j) corner[j] = (mask >> j) & 1 ? base.upper[j] : base.lower[j];
        Vec y = Tinv * corner;
        lo = lo.cwiseMin(y);
        hi = hi.cwiseMax(y);
    }
    return Grid(lo, hi, base.counts);
}

WeightFunction default_breve(const WeightFunction& F1, const WeightFunction& F2) {
    return breve(F1, F2, -2.0, 60.0, 1025);
}

/// Inverse of a monotone Orlicz map; powers invert in closed form, anything
/// else by bisection in log t.
std::function<double(double)> invert(const OrliczFunction& h1) {
    if (h1.is_power()) {
        double e = h1.exponent();
        if (e == 0) throw std::invalid_argument("cyclic: constant h1 has no inverse");
        return [e](double u) { return std::pow(u, 1 / e); };
    }
    bool inc = h1(1e6) > h1(1e-6);
    return [h1, inc](double u) {
        double lo = -40, hi = 40;  // bisection over log t
        for (int it = 0; it < 200; ++it) {
            double mid = (lo + hi) / 2;
            bool below = (h1(std::exp(mid)) < u) == inc;
            (below ? lo : hi) = mid;
        }
        return std::exp((lo + hi) / 2);
    };
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }
};

}  // namespace

std::string VerdictReport::to_jsonl() const {
    nlohmann::json j;
    j["check_id"] = check_id;
    j["statement"] = statement;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["relation"] = relation;
    j["tolerance"] = tolerance;
    j["slack"] = slack;
    j["status"] = status;
    return j.dump();
}

Mat random_slpm(int n, unsigned long long seed, int index) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (unsigned long long)(index + 1));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Mat T = Mat::Identity(n, n);
    if (n == 1) {
        T(0, 0) = uni(rng) < 0.5 ? 1.0 : -1.0;
        return T;
    }
    auto rotation = [&](int a, int b, double th) {
        Mat R = Mat::Identity(n, n);
        R(a, a) = std::cos(th);
        R(b, b) = std::cos(th);
        R(a, b) = -std::sin(th);
        R(b, a) = std::sin(th);
        return R;
    };
    T = rotation(0, 1, 2 * M_PI * uni(rng)) * T;
    Mat S = Mat::Identity(n, n);
    S(0, 1) = 0.4 * (uni(rng) - 0.5);  // mild shear, det 1
    T = S * T;
    Mat D = Mat::Identity(n, n);
    double prod = 1;
    for (int j = 0; j + 1 < n; ++j) {
        double d = 0.85 + 0.35 * uni(rng);
        D(j, j) = d;
        prod *= d;
    }
    D(n - 1, n - 1) = 1.0 / prod;
    T = D * T;
    T = rotation(0, n - 1, 2 * M_PI * uni(rng)) * T;
    if (uni(rng) < 0.5) T.col(0) *= -1;  // reflection, det -1
    return T;
}

namespace {

/// Evaluates one of the invariance-checked quantities on psi over `window`.
double quantity_value(const std::string& id, const FunctionRep& psi, const Grid& window,
                      const TestSuiteConfig& cfg, const Mat* T_for_g) {
    const int n = psi.dim();
    WeightFunction F = WeightFunction::exp_neg();
    OrliczFunction h = OrliczFunction::power(-2.0 / n);
    CandidateFamily fam = CandidateFamily::standard();
    (void)cfg;
    if (id == "mixed_integral") {
        OrliczContext ctx = make_context(psi, window);
        // the matching test function for psi o T is g o T^{-t}
        Mat M = T_for_g ? Mat(T_for_g->inverse().transpose()) : Mat(Mat::Identity(n, n));
        PointFn g = [M](const Vec& y) {
            Vec z = M * y;
            return std::exp(-0.5 * z.squaredNorm());
        };
        return mixed_integral(h, F, F, ctx, g);
    }
    OrliczContext ctx = make_context(psi, window);
    if (id == "orlicz_as") return orlicz_as(h, F, F, ctx, fam).value;
    if (id == "orlicz_gm") return orlicz_gm(h, F, F, ctx, fam).value;
    if (id == "asp_direct") return asp_direct(2.0, F, F, ctx).value;
    if (id == "gp") return gp(2.0, F, F, ctx, fam).value;
    throw std::invalid_argument("check_invariance: unknown quantity " + id);
}

}  // namespace

std::vector<VerdictReport> check_invariance(const std::string& quantity_id,
                                            const FunctionRep& psi, int count,
                                            unsigned long long seed,
                                            const TestSuiteConfig& cfg) {
    const int n = psi.dim();
    Grid base = default_window(psi);
    double ref = quantity_value(quantity_id, psi, base, cfg, nullptr);
    std::vector<VerdictReport> out;
    for (int k = 0; k < count; ++k) {
        Timer tm;
        Mat T = random_slpm(n, seed, k);
        double val = quantity_value(quantity_id, psi.compose(T), composed_window(base, T), cfg, &T);
        VerdictReport r = make_report(
            "invariance/" + quantity_id + "/" + std::to_string(k),
            "volume-preserving reparametrization leaves " + quantity_id + " unchanged", val, ref,
            "==", 0.01);
        r.runtime = tm.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

FunctionRep perturbed_potential(int n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Mat A = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) A(j, j) = 0.35 + 0.4 * uni(rng);
    if (n == 2) {
        double off = 0.15 * (uni(rng) - 0.5);
        A(0, 1) = A(1, 0) = off;
    }
    struct Bump {
        Vec a;
        double eps;
    };
    std::vector<Bump> bumps;
    for (int b = 0; b < 3; ++b) {
        Vec a(n);
        for (int j = 0; j < n; ++j) a[j] = 2 * uni(rng) - 1;
        if (a.norm() < 1e-6) a[0] = 1;
        a.normalize();
        bumps.push_back({a, 0.05 + 0.15 * uni(rng)});
    }
    Grid grid = Grid::cube(n, 4.0, n == 1 ? 161 : 81);
    std::vector<double> vals(static_cast<size_t>(grid.total()));
    for (long i = 0; i < grid.total(); ++i) {
        Vec x = grid.point(i);
        double v = x.dot(A * x);
        for (const Bump& b : bumps) {
            double t = b.a.dot(x);
            v += b.eps * (t > 30 ? t : std::log1p(std::exp(t)));  // softplus, convex
        }
        vals[size_t(i)] = v;
    }
    return FunctionRep::sampled(grid, std::move(vals));
}

FunctionRep perturbed_s_potential(int n, unsigned long long seed) {
    if (n != 1) throw std::invalid_argument("perturbed_s_potential: only built for one dimension");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double s = 0.5;
    double alpha = 0.6 + 0.4 * uni(rng), beta = 0.05 + 0.1 * uni(rng);
    // support radius: where the potential reaches 1/s
    double r = 1.0;
    while (alpha * r * r + beta * std::pow(r, 4) < 1 / s) r += 1e-3;
    Grid grid = Grid::cube(1, r, 161);
    std::vector<double> vals(static_cast<size_t>(grid.total()));
    for (long i = 0; i < grid.total(); ++i) {
        double x = grid.point(i)[0];
        double v = alpha * x * x + beta * std::pow(x, 4);
        vals[size_t(i)] = v < 1 / s ? v : kInf;
    }
    return FunctionRep::sampled(grid, std::move(vals));
}

VerdictReport check_bs(const FunctionRep& psi, const WeightFunction& F1,
                       const WeightFunction& F2, bool expect_equality,
                       const TestSuiteConfig& cfg, bool recenter) {
    Timer tm;
    (void)cfg;
    const int n = psi.dim();
    FunctionRep centered = psi;
    if (recenter) centered = santalo_center(psi, F1, F2).centered;
    // widen the closed-form window so exponential tails are negligible
    Grid window = default_window(centered);
    if (centered.closed_form()) window = Grid::cube(n, 4.5, n == 1 ? 181 : 91);
    DualOptions opt;
    opt.primal_grid = window;
    DualPair dp = legendre(centered, opt);
    double I1 = integrate_weight(F1, centered, window).value;
    double I2 = integrate_weight(F2, dp.dual, dp.dual_grid).value;
    double Ib = radial_integral(default_breve(F1, F2), 1.0, n).value;
    double rhs = Ib * Ib;
    VerdictReport r = make_report("bs-product", "weighted mass times dual mass stays below the radial envelope squared",
                                  I1 * I2, rhs, expect_equality ? "==" : "<=",
                                  expect_equality ? 0.01 : 0.01);
    r.runtime = tm.seconds();
    return r;
}

VerdictReport check_isoperimetric(const OrliczFunction& h, const WeightFunction& F1,
                                  const WeightFunction& F2, const FunctionRep& psi,
                                  bool expect_equality, const TestSuiteConfig& cfg) {
    Timer tm;
    const int n = psi.dim();
    OrliczContext ctx = make_context(psi);
    double lhs = orlicz_as(h, F1, F2, ctx, CandidateFamily::standard()).value;
    double I2 = integrate_weight(F2, ctx.dp.dual, ctx.dp.dual_grid).value;
    double Ib = radial_integral(default_breve(F1, F2), 1.0, n).value;
    double chat_n = Ib / I2;  // c-hat^n
    double I_ref = chat_n * Ib;  // I(F-breve, 1/c-hat)
    double rhs = I_ref * h(sqrt2pi_pow(n) * std::pow(chat_n, 2) / I_ref);
    bool le = h.is_inf_problem();
    VerdictReport r = make_report(
        "isoperimetric/" + h.name(),
        "affine surface area compared with the matching rotation-invariant reference", lhs, rhs,
        expect_equality ? "==" : (le ? "<=" : ">="), cfg.tol_equality, cfg.flag_margin);
    r.runtime = tm.seconds();
    return r;
}

VerdictReport check_cyclic(const OrliczFunction& h, const OrliczFunction& h1,
                           const WeightFunction& F1, const WeightFunction& F2,
                           const FunctionRep& psi, char condition_tag,
                           const TestSuiteConfig& cfg) {
    Timer tm;
    bool same_class = h.cls() == h1.cls();
    bool le;
    switch (condition_tag) {
        case 'a':
            if (!(h.cls() == OrliczFunction::Cls::Phi && h1.cls() == OrliczFunction::Cls::Psi))
                throw std::invalid_argument("cyclic tag a: need h convex-class, h1 concave-class");
            le = true;
            break;
        case 'b':
            if (!(h.cls() == OrliczFunction::Cls::Phi && h1.cls() == OrliczFunction::Cls::Phi))
                throw std::invalid_argument("cyclic tag b: need both convex-class");
            le = true;
            break;
        case 'c':
            if (!same_class) throw std::invalid_argument("cyclic tag c: need matching classes");
            le = true;
            break;
        case 'd':
            if (!(h.cls() == OrliczFunction::Cls::Psi && h1.cls() == OrliczFunction::Cls::Phi))
                throw std::invalid_argument("cyclic tag d: need h concave-class, h1 convex-class");
            le = false;
            break;
        case 'e':
            if (same_class) throw std::invalid_argument("cyclic tag e: need differing classes");
            le = false;
            break;
        case 'f':
            if (!same_class) throw std::invalid_argument("cyclic tag f: need matching classes");
            le = false;
            break;
        default:
            throw std::invalid_argument("cyclic: condition tag must be a..f");
    }
    auto h1_inv = invert(h1);
    auto H = [&](double u) { return h(h1_inv(u)); };

    OrliczContext ctx = make_context(psi);
    double I1 = integrate_weight(F1, psi, ctx.grid).value;
    CandidateFamily fam = CandidateFamily::standard();
    double a_h = orlicz_as(h, F1, F2, ctx, fam).value / I1;
    double a_h1 = orlicz_as(h1, F1, F2, ctx, fam).value / I1;
    double lhs = a_h, rhs = H(a_h1);
    VerdictReport r = make_report(
        std::string("cyclic/") + condition_tag + "/" + h.name() + "-" + h1.name(),
        "normalized surface areas linked through the composed comparison map", lhs, rhs,
        le ? "<=" : ">=", cfg.tol_direction, cfg.flag_margin);
    r.runtime = tm.seconds();
    return r;
}

VerdictReport check_santalo_product(double p, const WeightFunction& F1,
                                    const WeightFunction& F2, const FunctionRep& psi,
                                    bool expect_equality, const TestSuiteConfig& cfg) {
    Timer tm;
    const int n = psi.dim();
    CandidateFamily fam = CandidateFamily::logconcave();
    OrliczContext ctxA = make_context(psi);
    double ga = gp(p, F1, F2, ctxA, fam).value;
    OrliczContext ctxB = make_context(ctxA.dp.dual);
    double gb = gp(p, F2, F1, ctxB, fam).value;
    double Ib = radial_integral(default_breve(F1, F2), 1.0, n).value;
    double rhs = Ib * Ib;
    std::string rel = p > 0 ? (expect_equality ? "==" : "<=") : "report";
    VerdictReport r = make_report("santalo-product/p=" + std::to_string(p),
                                  "product of the functional and its dual against the reference squared",
                                  ga * gb, rhs, rel, p > 0 ? 0.015 : 0, cfg.flag_margin);
    r.runtime = tm.seconds();
    return r;
}

std::vector<VerdictReport> check_sconcave_suite(const FunctionRep& psi, double s,
                                                bool expect_equality,
                                                const TestSuiteConfig& cfg) {
    std::vector<VerdictReport> out;
    const int n = psi.dim();
    const double omega = omega_ns(n, s);
    SConcaveContext ctx = make_s_context(psi, s);

    {  // centered product bound against omega^2
        Timer tm;
        double If = integral_f_s(ctx.sp).direct.value;
        double Idual = sum_regular(ctx.dual_reg, [&](size_t i) {
            double q = 1 - s * ctx.dual_reg.values[i];
            return q > 0 ? std::pow(q, 1 / s) : 0.0;
        });
        VerdictReport r = make_report("sconcave/product/s=" + std::to_string(s),
                                      "mass times dual mass bounded by the ball constant squared",
                                      If * Idual, omega * omega,
                                      expect_equality ? "==" : "<=", cfg.tol_equality);
        r.runtime = tm.seconds();
        out.push_back(std::move(r));

        // isoperimetric comparison against the matching envelope
        Timer tm2;
        OrliczFunction h = OrliczFunction::power(-1.0 / n);  // decreasing convex-class
        double csn = Idual / omega;  // c_s^n
        double lhs = orlicz_as_s(h, ctx, CandidateFamily::standard()).value;
        double rhs = (1 + n * s) * omega * (1.0 / csn) * h(1.0 / csn);
        VerdictReport r2 = make_report("sconcave/isoperimetric/s=" + std::to_string(s),
                                       "surface area maximized by the matching ball envelope", lhs,
                                       rhs, expect_equality ? "==" : "<=", cfg.tol_equality,
                                       cfg.flag_margin);
        r2.runtime = tm2.seconds();
        out.push_back(std::move(r2));

        // bound through the candidate built from the dual potential
        Timer tm3;
        double lhs3 = lhs;
        double rhs3 = (1 + n * s) * If * h(omega / Idual);
        VerdictReport r3 = make_report("sconcave/volume-bound/s=" + std::to_string(s),
                                       "surface area bounded through mass and dual mass", lhs3,
                                       rhs3, "<=", cfg.tol_direction, cfg.flag_margin);
        r3.runtime = tm3.seconds();
        out.push_back(std::move(r3));

        // cyclic comparison, matching-class pair with concave increasing link
        Timer tm4;
        OrliczFunction hc = OrliczFunction::power(-1.0 / n);
        OrliczFunction hc1 = OrliczFunction::power(-2.0 / n);
        double denom = (1 + n * s) * If;
        double ah = orlicz_as_s(hc, ctx, CandidateFamily::standard()).value / denom;
        double ah1 = orlicz_as_s(hc1, ctx, CandidateFamily::standard()).value / denom;
        double H = std::pow(ah1, 0.5);  // link map of the two power choices
        VerdictReport r4 = make_report("sconcave/cyclic/c/s=" + std::to_string(s),
                                       "normalized surface areas linked through the composed comparison map",
                                       ah, H, "<=", cfg.tol_direction, cfg.flag_margin);
        r4.runtime = tm4.seconds();
        out.push_back(std::move(r4));
    }

    {  // G_p product bound, p = 1
        Timer tm;
        double p = 1.0;
        double ga = gp_s(p, ctx, CandidateFamily::logconcave()).value;
        SConcaveContext ctxd = make_s_context(ctx.sp.dual, s);
        double gb = gp_s(p, ctxd, CandidateFamily::logconcave()).value;
        VerdictReport r = make_report("sconcave/gp-product/s=" + std::to_string(s),
                                      "product of the functional and its dual against the ball constant squared",
                                      ga * gb, omega * omega,
                                      expect_equality ? "==" : "<=", cfg.tol_equality,
                                      cfg.flag_margin);
        r.runtime = tm.seconds();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerdictReport> check_af(const MixedSpec& spec, const TestSuiteConfig& cfg) {
    std::vector<VerdictReport> out;
    const int m = spec.m();
    MixedContext ctx = make_mixed_context(spec);
    CandidateFamily fam = CandidateFamily::standard();

    Timer tm;
    double mixed = mixed_orlicz_as(ctx, fam).value;
    double prod = 1;
    for (int k = 0; k < m; ++k)
        prod *= orlicz_as(spec.hs[size_t(k)], spec.F1s[size_t(k)], spec.F2s[size_t(k)],
                          ctx.singles[size_t(k)], fam)
                    .value;
    VerdictReport r = make_report("af/product/m=" + std::to_string(m),
                                  "joint quantity to the m-th power bounded by the product of singles",
                                  std::pow(mixed, m), prod, "<=", cfg.tol_direction,
                                  cfg.flag_margin);
    r.runtime = tm.seconds();
    out.push_back(std::move(r));

    if (m == 3 && spec.hs.front().cls() == OrliczFunction::Cls::Psi) {
        // r-partial bounds: repeat the k-th tail component r times
        for (int rr : {1, 2}) {
            Timer tmr;
            double rhs = 1;
            for (int k = m - rr; k < m; ++k) {
                MixedSpec sub = spec;
                for (int j = m - rr; j < m; ++j) {
                    sub.psis[size_t(j)] = spec.psis[size_t(k)];
                    sub.hs[size_t(j)] = spec.hs[size_t(k)];
                    sub.F1s[size_t(j)] = spec.F1s[size_t(k)];
                    sub.F2s[size_t(j)] = spec.F2s[size_t(k)];
                }
                MixedContext cs = make_mixed_context(sub);
                rhs *= mixed_orlicz_as(cs, fam).value;
            }
            VerdictReport rp = make_report(
                "af/partial/r=" + std::to_string(rr),
                "joint quantity to the r-th power bounded by tail-repeated joints",
                std::pow(mixed, rr), rhs, "<=", cfg.tol_direction, cfg.flag_margin);
            rp.runtime = tmr.seconds();
            out.push_back(std::move(rp));
        }
    }

    if (m == 2) {
        const int n = ctx.n();
        if (n >= 2) {
            Timer tmi;
            int i = 0, j = 1, k = n;
            double ai = ith_mixed_as(ctx, i, fam).value;
            double aj = ith_mixed_as(ctx, j, fam).value;
            double ak = ith_mixed_as(ctx, k, fam).value;
            bool psi_pair = spec.hs.front().cls() == OrliczFunction::Cls::Psi;
            VerdictReport ri = make_report(
                "af/interpolation",
                "middle weighted quantity bounded by the outer weighted quantities",
                std::pow(aj, k - i), std::pow(ai, k - j) * std::pow(ak, j - i),
                psi_pair ? "<=" : "report", cfg.tol_direction, cfg.flag_margin);
            ri.runtime = tmi.seconds();
            out.push_back(std::move(ri));
        }
        // degenerate ends coincide with the singles
        Timer tmd;
        double a0 = ith_mixed_as(ctx, 0, fam).value;
        double s0 = orlicz_as(spec.hs[0], spec.F1s[0], spec.F2s[0], ctx.singles[0], fam).value;
        VerdictReport rd = make_report("af/ith-degenerate",
                                       "zero weight on the second component reduces to the first single",
                                       a0, s0, "==", cfg.tol_equality);
        rd.runtime = tmd.seconds();
        out.push_back(std::move(rd));
    }
    return out;
}

std::string SuiteReport::jsonl() const {
    nlohmann::json hdr;
    hdr["checks"] = reports.size();
    hdr["failed"] = failed;
    hdr["flagged"] = flagged;
    std::ostringstream os;
    os << hdr.dump() << "\n";
    for (const VerdictReport& r : reports) os << r.to_jsonl() << "\n";
    return os.str();
}

std::string SuiteReport::table() const {
    std::ostringstream os;
    os << "status   slack        check\n";
    for (const VerdictReport& r : reports) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-8s %+.3e  ", r.status.c_str(), r.slack);
        os << buf << r.check_id << "\n";
    }
    os << failed << " failed, " << flagged << " flagged, " << reports.size() << " total\n";
    return os.str();
}

SuiteReport run_suite(const TestSuiteConfig& cfg) {
    SuiteReport sr;
    auto add = [&](std::vector<VerdictReport> rs, const std::string& suffix = "") {
        for (VerdictReport& r : rs) {
            if (!suffix.empty()) r.check_id += "/" + suffix;
            sr.reports.push_back(std::move(r));
        }
    };
    auto add1 = [&](VerdictReport r, const std::string& suffix = "") {
        if (!suffix.empty()) r.check_id += "/" + suffix;
        sr.reports.push_back(std::move(r));
    };
    WeightFunction F = WeightFunction::exp_neg();

    // invariance under volume-preserving maps
    const int tcount = cfg.quick ? 3 : cfg.transform_count;
    FunctionRep g2 = FunctionRep::gaussian(1.0, 2);
    Mat A2(2, 2);
    A2 << 0.6, 0.1, 0.1, 1.1;
    FunctionRep q2 = FunctionRep::quadratic(A2, 0.0);
    add(check_invariance("orlicz_as", g2, tcount, cfg.seed, cfg));
    add(check_invariance("asp_direct", q2, tcount, cfg.seed + 1, cfg));
    add(check_invariance("mixed_integral", g2, tcount, cfg.seed + 2, cfg));
    if (!cfg.quick) {
        add(check_invariance("orlicz_gm", g2, tcount, cfg.seed + 3, cfg));
        add(check_invariance("gp", q2, tcount, cfg.seed + 4, cfg));
    }
    {  // reflection is exact for a symmetric potential
        Timer tm;
        Mat R = Mat::Identity(2, 2);
        R(0, 0) = -1;
        OrliczContext ca = make_context(g2);
        OrliczContext cb = make_context(g2.compose(R));
        double va = asp_direct(2.0, F, F, ca).value;
        double vb = asp_direct(2.0, F, F, cb).value;
        VerdictReport r = make_report("invariance/reflection",
                                      "axis reflection leaves a symmetric input exactly unchanged",
                                      vb, va, "==", 1e-9);
        r.runtime = tm.seconds();
        add1(std::move(r));
    }

    // product bound roster: randomized strictly convex inputs plus the
    // quadratic equality cases
    {
        auto bs_id = [&](VerdictReport r, int k) {
            r.check_id += "/" + std::to_string(k);
            return r;
        };
        int idx = 0;
        add1(bs_id(check_bs(FunctionRep::gaussian(1.0, 1), F, F, true, cfg, false), idx++));
        Mat D2(2, 2);
        D2 << 1, 0, 0, 3;
        add1(bs_id(check_bs(FunctionRep::quadratic(D2, 0.0), F, F, true, cfg, false), idx++));
        const int roster = cfg.quick ? 4 : 20;
        for (int k = 0; k < roster; ++k) {
            int n = (k % 2) + 1;
            FunctionRep psi = perturbed_potential(n, cfg.seed + 100 + (unsigned long long)k);
            add1(bs_id(check_bs(psi, F, F, false, cfg, true), idx++));
        }
    }

    // isoperimetric comparisons
    add1(check_isoperimetric(OrliczFunction::power(-1.0), F, F, FunctionRep::gaussian(1.0, 1),
                             true, cfg),
         "gauss");
    add1(check_isoperimetric(OrliczFunction::power(0.5), F, F, FunctionRep::gaussian(1.0, 1),
                             true, cfg),
         "gauss");
    {
        Mat A1(1, 1);
        A1 << 0.8;
        FunctionRep q1 = FunctionRep::quadratic(A1, 0.0);
        add1(check_isoperimetric(OrliczFunction::power(-1.0), F, F, q1, false, cfg), "aniso");
        add1(check_isoperimetric(OrliczFunction::power(0.5), F, F, q1, false, cfg), "aniso");
        add1(check_isoperimetric(OrliczFunction::constant(1.0), F, F, q1, false, cfg), "aniso");
    }

    // cyclic comparisons, one instantiation per condition tag
    {
        Mat A1(1, 1);
        A1 << 0.8;
        FunctionRep q1 = FunctionRep::quadratic(A1, 0.0);
        add1(check_cyclic(OrliczFunction::power(2.0), OrliczFunction::power(0.5), F, F, q1, 'a', cfg));
        add1(check_cyclic(OrliczFunction::power(-1.0), OrliczFunction::power(2.0), F, F, q1, 'b', cfg));
        add1(check_cyclic(OrliczFunction::power(1.0 / 3), OrliczFunction::power(0.5), F, F, q1, 'c', cfg));
        add1(check_cyclic(OrliczFunction::power(0.5), OrliczFunction::power(2.0), F, F, q1, 'd', cfg));
        add1(check_cyclic(OrliczFunction::power(-1.0), OrliczFunction::power(0.5), F, F, q1, 'e', cfg));
        add1(check_cyclic(OrliczFunction::power(-2.0), OrliczFunction::power(-1.0), F, F, q1, 'f', cfg));
    }

    // Santalo-type products
    add1(check_santalo_product(1.0, F, F, FunctionRep::gaussian(1.0, 1), true, cfg));
    if (!cfg.quick)
        add1(check_santalo_product(2.0, F, F, FunctionRep::gaussian(1.0, 1), true, cfg));
    {
        Mat A1(1, 1);
        A1 << 0.8;
        VerdictReport r =
            check_santalo_product(1.0, F, F, FunctionRep::quadratic(A1, 0.0), false, cfg);
        r.check_id += "/anisotropic";
        add1(std::move(r));
        add1(check_santalo_product(-0.5, F, F, FunctionRep::gaussian(1.0, 1), false, cfg));
    }

    // s-concave batch
    add(check_sconcave_suite(FunctionRep::s_envelope(0.5, 1.0, 1), 0.5, true, cfg), "envelope");
    if (!cfg.quick) {
        add(check_sconcave_suite(FunctionRep::s_envelope(0.25, 1.3, 1), 0.25, true, cfg),
            "envelope");
        add(check_sconcave_suite(perturbed_s_potential(1, cfg.seed + 500), 0.5, false, cfg),
            "perturbed");
    }

    // joint product bounds
    {
        OrliczFunction hphi = OrliczFunction::power(-1.0);
        MixedSpec eq;
        eq.psis = {FunctionRep::gaussian(1.0, 1), FunctionRep::gaussian(1.0, 1)};
        eq.hs = {hphi, hphi};
        eq.F1s = {F, F};
        eq.F2s = {F, F};
        add(check_af(eq, cfg), "equal");
        MixedSpec two;
        two.psis = {FunctionRep::gaussian(0.8, 1), FunctionRep::gaussian(1.5, 1)};
        two.hs = {hphi, hphi};
        two.F1s = {F, F};
        two.F2s = {F, F};
        add(check_af(two, cfg), "distinct");
        if (!cfg.quick) {
            OrliczFunction hpsi = OrliczFunction::power(0.5);
            MixedSpec three;
            three.psis = {FunctionRep::gaussian(0.8, 1), FunctionRep::gaussian(1.0, 1),
                          FunctionRep::gaussian(1.4, 1)};
            three.hs = {hpsi, hpsi, hpsi};
            three.F1s = {F, F, F};
            three.F2s = {F, F, F};
            add(check_af(three, cfg), "triple");
            MixedSpec pair2;
            pair2.psis = {FunctionRep::gaussian(0.9, 2), FunctionRep::gaussian(1.2, 2)};
            pair2.hs = {hpsi, hpsi};
            pair2.F1s = {F, F};
            pair2.F2s = {F, F};
            add(check_af(pair2, cfg), "planar");
        }
    }

    std::stable_sort(sr.reports.begin(), sr.reports.end(),
                     [](const VerdictReport& a, const VerdictReport& b) {
                         return a.check_id < b.check_id;
                     });
    for (const VerdictReport& r : sr.reports) {
        sr.total_runtime += r.runtime;
        if (r.status == "fail") ++sr.failed;
        if (r.status == "flagged") ++sr.flagged;
    }
    return sr;
}

}  // namespace oas
