#include "oas/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "oas/simplex.hpp"

namespace oas {

namespace {

Grid pad_box(Vec lo, Vec hi, const std::vector<int>& counts, double pad) {
    for (long j = 0; j < lo.size(); ++j) {
        double c = (lo[j] + hi[j]) / 2, r = (hi[j] - lo[j]) / 2;
        if (r < 1e-12) throw std::runtime_error("dual grid auto-sizing: gradient range degenerate");
        lo[j] = c - (1 + pad) * r;
        hi[j] = c + (1 + pad) * r;
    }
    return Grid(std::move(lo), std::move(hi), counts);
}

/// Bounding box of gradients over finite nodes, padded, for the auto dual grid.
Grid auto_dual_grid(const FunctionRep& psi, const Grid& window) {
    const long total = window.total();
    Vec lo = Vec::Constant(window.dim, kInf), hi = Vec::Constant(window.dim, -kInf);
    bool any = false;
    for (long i = 0; i < total; ++i) {
        Vec x = window.point(i);
        if (!std::isfinite(psi.eval(x))) continue;
        Vec g;
        try {
            g = psi.gradient(x);
        } catch (const std::exception&) {
            continue;
        }
        lo = lo.cwiseMin(g);
        hi = hi.cwiseMax(g);
        any = true;
    }
    if (!any) throw std::runtime_error("dual grid auto-sizing: no usable gradients");
    return pad_box(lo, hi, window.counts, 0.10);
}

/// Closed-form conjugate of <A(Tx+b), Tx+b> + a; also covers the Gaussian.
FunctionRep analytic_conjugate(const Mat& A, double a, const FunctionRep& psi) {
    const int n = psi.dim();
    Mat T = psi.affine_T() ? *psi.affine_T() : Mat(Mat::Identity(n, n));
    Vec b = psi.affine_b() ? *psi.affine_b() : Vec(Vec::Zero(n));
    Mat B = T.transpose() * A * T;
    Vec l = 2 * T.transpose() * A * b;
    double k = b.dot(A * b) + a;
    FunctionRep q = FunctionRep::quadratic(B.inverse() / 4, -k);
    if (l.norm() > 0) q = q.translate(-l);
    return q;
}

}  // namespace

DualPair legendre(const FunctionRep& psi, const DualOptions& opt) {
    const int n = psi.dim();

    // analytic shortcuts
    const bool quad = psi.kind() == FunctionRep::Kind::Quadratic;
    const bool gauss = psi.kind() == FunctionRep::Kind::Gaussian;
    if (!opt.force_discrete && (quad || gauss)) {
        DualPair dp;
        dp.primal = psi;
        if (gauss && !psi.has_affine()) {
            dp.dual = FunctionRep::gaussian(1.0 / psi.gauss_c(), n);
        } else if (quad && !psi.has_affine()) {
            dp.dual = FunctionRep::quadratic(psi.quad_A().inverse() / 4, -psi.quad_a());
        } else {
            Mat A = quad ? psi.quad_A() : Mat(psi.gauss_c() * psi.gauss_c() / 2 * Mat::Identity(n, n));
            dp.dual = analytic_conjugate(A, quad ? psi.quad_a() : 0.0, psi);
        }
        if (opt.dual_grid) {
            dp.dual_grid = *opt.dual_grid;
        } else {
            // image of the window corners under the (linear) gradient map
            Grid w = opt.primal_grid ? *opt.primal_grid : default_window(psi);
            Vec lo = Vec::Constant(n, kInf), hi = Vec::Constant(n, -kInf);
            for (long c = 0; c < (1L << n); ++c) {
                Vec x(n);
                for (int j = 0; j < n; ++j) x[j] = ((c >> j) & 1) ? w.upper[j] : w.lower[j];
                Vec g = psi.gradient(x);
                lo = lo.cwiseMin(g);
                hi = hi.cwiseMax(g);
            }
            dp.dual_grid = pad_box(lo, hi, w.counts, 0.10);
        }
        dp.involution_error = 0;
        return dp;
    }

    // discrete path: direct max over primal samples, O(N*M)
    Grid window = opt.primal_grid ? *opt.primal_grid : default_window(psi);
    const long total = window.total();
    std::vector<Vec> xs;
    std::vector<double> vs;
    xs.reserve(size_t(total));
    for (long i = 0; i < total; ++i) {
        Vec x = window.point(i);
        double v = psi.eval(x);
        if (std::isfinite(v)) {
            xs.push_back(std::move(x));
            vs.push_back(v);
        }
    }
    if (xs.empty()) throw std::runtime_error("legendre: primal is infinite everywhere on the window");

    Grid dgrid = opt.dual_grid ? *opt.dual_grid : auto_dual_grid(psi, window);
    const long dtotal = dgrid.total();
    std::vector<double> dvals(static_cast<size_t>(dtotal));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < dtotal; ++i) {
        Vec y = dgrid.point(i);
        double best = -kInf;
        for (size_t k = 0; k < xs.size(); ++k) {
            double t = xs[k].dot(y) - vs[k];
            if (t > best) best = t;  // first index wins on ties
        }
        dvals[size_t(i)] = best;
    }

    DualPair dp;
    dp.primal = psi;
    dp.dual_grid = dgrid;
    dp.dual = FunctionRep::sampled(dgrid, dvals);

    if (opt.compute_involution) {
        std::vector<Vec> ys(static_cast<size_t>(dtotal));
        for (long i = 0; i < dtotal; ++i) ys[size_t(i)] = dgrid.point(i);
        std::vector<double> errs(xs.size(), 0.0);
#pragma omp parallel for schedule(static)
        for (long k = 0; k < long(xs.size()); ++k) {
            double best = -kInf;
            for (long i = 0; i < dtotal; ++i) {
                double t = ys[size_t(i)].dot(xs[size_t(k)]) - dvals[size_t(i)];
                if (t > best) best = t;
            }
            errs[size_t(k)] = std::abs(best - vs[size_t(k)]);
        }
        dp.involution_error = *std::max_element(errs.begin(), errs.end());
    }
    return dp;
}

FunctionRep polar_dual(const FunctionRep& psi, const DualOptions& opt) {
    return legendre(psi, opt).dual;
}

SDualPair s_dual(const FunctionRep& psi, double s, const DualOptions& opt) {
    if (!(s > 0)) throw std::invalid_argument("s_dual: s must be positive");
    const int n = psi.dim();
    Grid window = opt.primal_grid ? *opt.primal_grid : default_window(psi);

    SDualPair sp;
    sp.s = s;
    sp.primal = psi;
    sp.reg = regular_set(psi, window);
    sp.tmap_samples.resize(sp.reg.size());
    sp.psitilde_samples.resize(sp.reg.size());
    for (size_t i = 0; i < sp.reg.size(); ++i) {
        double pt = 1 + s * sp.reg.points[i].dot(sp.reg.gradients[i]) - s * sp.reg.values[i];
        if (!(pt > 0)) throw std::runtime_error("s_dual: psi_tilde <= 0 (input not admissibly s-concave)");
        sp.psitilde_samples[i] = pt;
        sp.tmap_samples[i] = sp.reg.gradients[i] / pt;
    }

    const bool env = psi.kind() == FunctionRep::Kind::SEnvelope && !psi.has_affine();
    if (env && std::abs(psi.env_s() - s) > 1e-12)
        throw std::invalid_argument("s_dual: s does not match the envelope parameter");

    if (env && !opt.force_discrete) {
        sp.dual = FunctionRep::s_envelope(s, 1.0 / psi.env_c(), n);
        sp.dual_grid = opt.dual_grid ? *opt.dual_grid
                                     : Grid::cube(n, psi.env_c() / std::sqrt(s), window.counts[0]);
        sp.involution_error = 0;
        return sp;
    }

    // support samples: finite psi with 1 - s psi > 0
    const long total = window.total();
    std::vector<Vec> xs;
    std::vector<double> vs;
    for (long i = 0; i < total; ++i) {
        Vec x = window.point(i);
        double v = psi.eval(x);
        if (!std::isfinite(v)) continue;
        if (!(1 - s * v > 0)) throw std::runtime_error("s_dual: psi >= 1/s inside the support");
        xs.push_back(std::move(x));
        vs.push_back(v);
    }
    if (xs.empty()) throw std::runtime_error("s_dual: empty support");

    Grid dgrid;
    if (opt.dual_grid) {
        dgrid = *opt.dual_grid;
    } else {
        Vec lo = Vec::Constant(n, kInf), hi = Vec::Constant(n, -kInf);
        for (const Vec& t : sp.tmap_samples) {
            lo = lo.cwiseMin(t);
            hi = hi.cwiseMax(t);
        }
        dgrid = pad_box(lo, hi, window.counts, 0.10);
    }

    const long dtotal = dgrid.total();
    std::vector<double> dvals(static_cast<size_t>(dtotal));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < dtotal; ++i) {
        Vec y = dgrid.point(i);
        double best = -kInf;
        for (size_t k = 0; k < xs.size(); ++k) {
            double t = (xs[k].dot(y) - vs[k]) / (1 - s * vs[k]);
            if (t > best) best = t;
        }
        dvals[size_t(i)] = (1 - s * best > 1e-9) ? best : kInf;  // outside the dual support
    }
    sp.dual_grid = dgrid;
    sp.dual = FunctionRep::sampled(dgrid, dvals);

    if (opt.compute_involution) {
        std::vector<Vec> ys;
        std::vector<double> ws;
        for (long i = 0; i < dtotal; ++i)
            if (std::isfinite(dvals[size_t(i)])) {
                ys.push_back(dgrid.point(i));
                ws.push_back(dvals[size_t(i)]);
            }
        std::vector<double> errs(xs.size(), 0.0);
#pragma omp parallel for schedule(static)
        for (long k = 0; k < long(xs.size()); ++k) {
            double best = -kInf;
            for (size_t i = 0; i < ys.size(); ++i) {
                double t = (ys[i].dot(xs[size_t(k)]) - ws[i]) / (1 - s * ws[i]);
                if (t > best) best = t;
            }
            errs[size_t(k)] = std::abs(best - vs[size_t(k)]);
        }
        sp.involution_error = errs.empty() ? 0 : *std::max_element(errs.begin(), errs.end());
    }
    return sp;
}

Vec t_map(const SDualPair& pair, const Vec& x) {
    const FunctionRep& psi = pair.primal;
    if (psi.kind() == FunctionRep::Kind::SEnvelope && !psi.has_affine())
        return psi.env_c() * psi.env_c() * x;
    double v = psi.eval(x);
    if (!std::isfinite(v)) throw std::domain_error("t_map: point outside the support");
    Vec g = psi.gradient(x);
    double pt = 1 + pair.s * x.dot(g) - pair.s * v;
    if (!(pt > 0)) throw std::domain_error("t_map: psi_tilde <= 0");
    return g / pt;
}

WeightFunction breve(const WeightFunction& F1, const WeightFunction& F2,
                     double t_lo, double t_hi, int resolution) {
    if (resolution < 2 || !(t_lo < t_hi)) throw std::invalid_argument("breve: bad range");
    // search window: where the weights still exceed cut * their max
    double b1 = F1.cutoff(tol::cut), b2 = F2.cutoff(tol::cut);
    double span = std::max({t_hi - t_lo, 10.0,
                            std::isfinite(b1) ? b1 : 0.0, std::isfinite(b2) ? b2 : 0.0});
    auto val = [&](double m, double u) { return std::sqrt(F1(m + u) * F2(m - u)); };

    std::vector<double> knots(static_cast<size_t>(resolution)), vals(static_cast<size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
        double t = t_lo + (t_hi - t_lo) * k / (resolution - 1);
        knots[size_t(k)] = t;
        // coarse grid over (mean m >= t, offset u), then two local refinements
        double mlo = t, mhi = t + span, ulo = -span, uhi = span;
        double best = -1, bm = t, bu = 0;
        for (int level = 0; level < 3; ++level) {
            const int nm = 65, nu = 129;
            for (int i = 0; i < nm; ++i)
                for (int j = 0; j < nu; ++j) {
                    double m = mlo + (mhi - mlo) * i / (nm - 1);
                    double u = ulo + (uhi - ulo) * j / (nu - 1);
                    double v = val(m, u);
                    if (v > best) {
                        best = v;
                        bm = m;
                        bu = u;
                    }
                }
            if (level == 0) {
                // sup growing toward the window edge means it diverges
                double edge = std::max({val(mhi, bu), val(bm, ulo), val(bm, uhi)});
                if (edge > best * (1 + 1e-6))
                    throw std::runtime_error("breve: supremum unbounded on the search window");
            }
            double dm = (mhi - mlo) / 8, du = (uhi - ulo) / 8;
            mlo = std::max(t, bm - dm);
            mhi = bm + dm;
            ulo = bu - du;
            uhi = bu + du;
        }
        vals[size_t(k)] = best;
    }
    for (int k = resolution - 2; k >= 0; --k)  // force non-increasing
        vals[size_t(k)] = std::max(vals[size_t(k)], vals[size_t(k) + 1]);
    return WeightFunction::tabulated(std::move(knots), std::move(vals), true,
                                     F1.is_logconcave_radial() && F2.is_logconcave_radial());
}

CenterResult santalo_center(const FunctionRep& psi, const WeightFunction&,
                            const WeightFunction& F2, const DualOptions& opt) {
    DualOptions dopt = opt;
    dopt.compute_involution = false;
    DualPair dp = legendre(psi, dopt);

    // dual samples once; (psi_z)*(y) = psi*(y) - <z,y> shifts them for free
    const Grid& dg = dp.dual_grid;
    const long dtotal = dg.total();
    std::vector<Vec> ys;
    std::vector<double> ds;
    for (long i = 0; i < dtotal; ++i) {
        Vec y = dg.point(i);
        double v = dp.dual.eval(y);
        if (std::isfinite(v)) {
            ys.push_back(std::move(y));
            ds.push_back(v);
        }
    }
    if (ys.empty()) throw std::runtime_error("santalo_center: dual has no finite samples");
    const double cellvol = dg.cell_volume();

    auto objective = [&](const Vec& z) {
        double acc = 0;
        for (size_t i = 0; i < ys.size(); ++i) acc += F2(ds[i] - z.dot(ys[i]));
        return acc * cellvol;
    };

    const int n = psi.dim();
    Vec z = Vec::Zero(n);
    double step = 0.5;
    SimplexResult best;
    best.x = z;
    best.fx = objective(z);
    for (int attempt = 0; attempt < 3; ++attempt) {
        SimplexResult r = nelder_mead(objective, best.x, step, 200 * n);
        if (r.fx <= best.fx) best = r;
        if (r.converged && attempt > 0) break;
        step /= 4;
    }

    // reject clearly unconverged results on a still-sloping objective
    double h = 1e-4;
    double gnorm = 0;
    for (int j = 0; j < n; ++j) {
        Vec zp = best.x, zm = best.x;
        zp[j] += h;
        zm[j] -= h;
        double g = (objective(zp) - objective(zm)) / (2 * h);
        gnorm = std::max(gnorm, std::abs(g));
    }
    if (gnorm > 1e-2 * (std::abs(best.fx) + 1))
        throw std::runtime_error("santalo_center: search failed to settle (non-coercive objective?)");

    CenterResult res;
    res.z0 = best.x;
    res.centered = psi.translate(best.x);
    res.objective = best.fx;
    return res;
}

}  // namespace oas
