#include "oas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oas/gammafn.hpp"
#include "oas/reduce.hpp"

namespace oas {

namespace {

struct SumStats {
    double value = 0;
    double trunc_radius = 0;
    long used = 0;
    double clipped = 0;
};

/// Weighted midpoint sum of term(i) over the regular set with the relative
/// truncation rule and (optionally) the boundary blow-up clip.
SumStats weighted_sum(const RegularSet& rs, const std::function<double(size_t)>& term, bool clip) {
    const long n = long(rs.size());
    std::vector<double> raw(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) raw[size_t(i)] = term(size_t(i));

    double tmax = 0;
    for (double v : raw) {
        if (!std::isfinite(v)) throw std::runtime_error("quadrature: non-finite integrand");
        tmax = std::max(tmax, v);
    }
    const double floor_cut = tol::cut * tmax;

    double clip_cut = kInf;
    if (clip) {
        std::vector<double> pos;
        for (double v : raw)
            if (v > 0) pos.push_back(v);
        if (!pos.empty()) {
            auto mid = pos.begin() + long(pos.size()) / 2;
            std::nth_element(pos.begin(), mid, pos.end());
            clip_cut = tol::clip_factor * *mid;
        }
    }

    SumStats st;
    std::vector<double> terms(size_t(n), 0.0);
    for (long i = 0; i < n; ++i) {
        double v = raw[size_t(i)];
        double wv = v * rs.weights[size_t(i)];
        // the clip targets support-edge blow-up, so it only touches the
        // subsampled boundary cells (recognizable by their reduced weight)
        bool boundary = rs.weights[size_t(i)] < rs.cell_volume * 0.999;
        if (boundary && v > clip_cut) {
            st.clipped += wv;
            continue;
        }
        if (v < floor_cut) continue;
        terms[size_t(i)] = wv;
        ++st.used;
        st.trunc_radius = std::max(st.trunc_radius, rs.points[size_t(i)].norm());
    }
    st.value = pairwise_sum(terms);
    return st;
}

IntegralResult with_refinement(const FunctionRep& psi, const Grid& grid,
                               const std::function<double(const RegularSet&, size_t)>& term,
                               bool clip) {
    RegularSet coarse = regular_set(psi, grid);
    RegularSet fine = regular_set(psi, grid.refined());
    SumStats sc = weighted_sum(coarse, [&](size_t i) { return term(coarse, i); }, clip);
    SumStats sf = weighted_sum(fine, [&](size_t i) { return term(fine, i); }, clip);
    IntegralResult r;
    r.value = sf.value;
    r.est_error = std::abs(sf.value - sc.value);
    r.truncation_radius = sf.trunc_radius;
    r.points_used = sf.used;
    r.clipped = sf.clipped;
    return r;
}

}  // namespace

double sum_regular(const RegularSet& rs, const std::function<double(size_t)>& term, bool clip) {
    return weighted_sum(rs, term, clip).value;
}

IntegralResult integrate_regular(const FunctionRep& psi, const Grid& grid,
                                 const std::function<double(const RegularSet&, size_t)>& term,
                                 bool clip) {
    return with_refinement(psi, grid, term, clip);
}

IntegralResult integrate_weight(const WeightFunction& F, const FunctionRep& psi, const Grid& grid) {
    IntegralResult r = with_refinement(
        psi, grid, [&](const RegularSet& rs, size_t i) { return F(rs.values[i]); }, false);
    if (!(r.value > 0)) throw std::runtime_error("integrate_weight: integral not strictly positive");
    return r;
}

IntegralResult integrate_dual(const PointFn& g, const DualPair& pair, DualMode mode,
                              const std::optional<Grid>& primal_grid) {
    auto dual_side = [&] {
        return with_refinement(
            pair.dual, pair.dual_grid,
            [&](const RegularSet& rs, size_t i) { return g(rs.points[i]); }, false);
    };
    auto pushforward = [&] {
        Grid w = primal_grid ? *primal_grid : default_window(pair.primal);
        return with_refinement(
            pair.primal, w,
            [&](const RegularSet& rs, size_t i) { return g(rs.gradients[i]) * rs.hess_dets[i]; },
            false);
    };
    switch (mode) {
        case DualMode::DualSide:
            return dual_side();
        case DualMode::Pushforward:
            return pushforward();
        case DualMode::Both: {
            IntegralResult a = dual_side(), b = pushforward();
            double diff = std::abs(a.value - b.value);
            double tolr = 3 * (a.est_error + b.est_error) + 1e-9 * (std::abs(a.value) + std::abs(b.value));
            if (diff > tolr)
                throw std::runtime_error("integrate_dual: dual-side and pushforward disagree (grid too coarse)");
            a.est_error = std::max(a.est_error, diff);
            return a;
        }
    }
    throw std::logic_error("unreachable");
}

IntegralResult radial_integral(const WeightFunction& F, double c, int n,
                               std::optional<double> trunc_t) {
    if (!(c > 0) || n < 1) throw std::invalid_argument("radial_integral: need c > 0, n >= 1");
    double t_cut = trunc_t ? *trunc_t : F.cutoff(tol::cut);
    if (!std::isfinite(t_cut)) throw std::runtime_error("radial_integral: divergent tail (no cutoff)");
    const double U = std::sqrt(2 * t_cut);  // substitution u = c r makes the c-scaling exact
    const double area = 2 * std::pow(M_PI, n / 2.0) / gamma_fn(n / 2.0);

    auto radial = [&](long K) {
        double h = U / double(K);
        return parallel_sum(K, [&](long i) {
                   double u = (double(i) + 0.5) * h;
                   return F(u * u / 2) * std::pow(u, n - 1) * h;
               });
    };
    const long K = 4096;
    double coarse = radial(K), fine = radial(2 * K);

    IntegralResult r;
    r.value = std::pow(c, -n) * area * fine;
    r.est_error = std::pow(c, -n) * area * std::abs(fine - coarse);
    r.truncation_radius = U / c;
    r.points_used = 2 * K;
    return r;
}

double omega_ns(int n, double s) {
    if (n < 1 || !(s > 0)) throw std::invalid_argument("omega_ns: need n >= 1, s > 0");
    // log form: the Gamma arguments grow like 1/(2s) and overflow for small s
    return std::exp(n / 2.0 * std::log(M_PI / s) + log_gamma_fn(1 + 1 / (2 * s)) -
                    log_gamma_fn(1 + n / 2.0 + 1 / (2 * s)));
}

namespace {

double psi_tilde(const RegularSet& rs, size_t i, double s) {
    return 1 + s * rs.points[i].dot(rs.gradients[i]) - s * rs.values[i];
}

}  // namespace

IntegralResult integrate_s(const PointFn& g, const SDualPair& sp, DualMode mode) {
    const double s = sp.s;
    const int n = sp.primal.dim();
    auto dual_side = [&] {
        return with_refinement(
            sp.dual, sp.dual_grid,
            [&](const RegularSet& rs, size_t i) { return g(rs.points[i]); }, true);
    };
    auto pushforward = [&] {
        return with_refinement(
            sp.primal, sp.reg.grid,
            [&](const RegularSet& rs, size_t i) {
                double pt = psi_tilde(rs, i, s);
                if (!(pt > 0)) return 0.0;
                Vec t = rs.gradients[i] / pt;
                return g(t) * (1 - s * rs.values[i]) * rs.hess_dets[i] / std::pow(pt, n + 1);
            },
            true);
    };
    switch (mode) {
        case DualMode::DualSide:
            return dual_side();
        case DualMode::Pushforward:
            return pushforward();
        case DualMode::Both: {
            IntegralResult a = dual_side(), b = pushforward();
            double diff = std::abs(a.value - b.value);
            double tolr = 3 * (a.est_error + b.est_error) + 1e-9 * (std::abs(a.value) + std::abs(b.value));
            if (diff > tolr)
                throw std::runtime_error("integrate_s: dual-side and pushforward disagree (grid too coarse)");
            a.est_error = std::max(a.est_error, diff);
            return a;
        }
    }
    throw std::logic_error("unreachable");
}

FIntegral integral_f_s(const SDualPair& sp) {
    const double s = sp.s;
    const int n = sp.primal.dim();
    FIntegral out;
    out.direct = with_refinement(
        sp.primal, sp.reg.grid,
        [&](const RegularSet& rs, size_t i) {
            double q = 1 - s * rs.values[i];
            return q > 0 ? std::pow(q, 1 / s) : 0.0;
        },
        true);
    out.via_identity = with_refinement(
        sp.primal, sp.reg.grid,
        [&](const RegularSet& rs, size_t i) {
            double q = 1 - s * rs.values[i];
            if (!(q > 0)) return 0.0;
            return std::pow(q, 1 / s - 1) * psi_tilde(rs, i, s);
        },
        true);
    out.via_identity.value /= (1 + n * s);
    out.via_identity.est_error /= (1 + n * s);
    out.discrepancy = std::abs(out.direct.value - out.via_identity.value);
    double tolr = 3 * (out.direct.est_error + out.via_identity.est_error) +
                  1e-9 * (std::abs(out.direct.value) + std::abs(out.via_identity.value));
    if (out.discrepancy > tolr)
        throw std::runtime_error("integral_f_s: the two evaluations of I(f) disagree");
    return out;
}

}  // namespace oas
