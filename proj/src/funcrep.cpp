#include "oas/funcrep.hpp"

#include <algorithm>
#include <cmath>

namespace oas {

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_convex_lines(const SampledData& d) {
    double scale = 0;
    for (double v : d.values)
        if (finite(v)) scale = std::max(scale, std::abs(v));
    const double slack = tol::cvx_rel * std::max(scale, 1.0);
    const Grid& g = d.grid;
    const long total = g.total();
    // strides per axis in row-major order
    std::vector<long> stride(size_t(g.dim), 1);
    for (int j = g.dim - 2; j >= 0; --j) stride[size_t(j)] = stride[size_t(j) + 1] * g.counts[size_t(j) + 1];
    for (long i = 0; i < total; ++i) {
        long rem = i;
        for (int j = 0; j < g.dim; ++j) {
            long idx = (rem / stride[size_t(j)]) % g.counts[size_t(j)];
            if (idx == 0 || idx == g.counts[size_t(j)] - 1) continue;
            double vm = d.values[size_t(i - stride[size_t(j)])];
            double v0 = d.values[size_t(i)];
            double vp = d.values[size_t(i + stride[size_t(j)])];
            if (finite(vm) && finite(v0) && finite(vp) && vm + vp - 2 * v0 < -slack)
                throw std::invalid_argument("sampled function is not convex along a grid axis");
        }
        (void)rem;
    }
}

}  // namespace

FunctionRep FunctionRep::quadratic(const Mat& A, double a) {
    if (A.rows() != A.cols()) throw std::invalid_argument("quadratic: A must be square");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > tol::sym_rel * (1 + A.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("quadratic: A must be symmetric");
    Eigen::LLT<Mat> llt(A);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("quadratic: A must be positive definite");
    FunctionRep f;
    f.kind_ = Kind::Quadratic;
    f.dim_ = int(A.rows());
    f.A_ = (A + A.transpose()) / 2;
    f.a_ = a;
    return f;
}

FunctionRep FunctionRep::gaussian(double c, int dim) {
    if (!(c > 0)) throw std::invalid_argument("gaussian: c must be positive");
    FunctionRep f;
    f.kind_ = Kind::Gaussian;
    f.dim_ = dim;
    f.c_ = c;
    return f;
}

FunctionRep FunctionRep::s_envelope(double s, double c, int dim) {
    if (!(s > 0) || !(c > 0)) throw std::invalid_argument("s_envelope: s and c must be positive");
    FunctionRep f;
    f.kind_ = Kind::SEnvelope;
    f.dim_ = dim;
    f.s_ = s;
    f.c_ = c;
    return f;
}

FunctionRep FunctionRep::sampled(Grid grid, std::vector<double> values) {
    if (long(values.size()) != grid.total()) throw std::invalid_argument("sampled: value count does not match grid");
    auto data = std::make_shared<SampledData>(SampledData{std::move(grid), std::move(values)});
    check_convex_lines(*data);
    FunctionRep f;
    f.kind_ = Kind::Sampled;
    f.dim_ = data->grid.dim;
    f.data_ = std::move(data);
    return f;
}

Vec FunctionRep::to_base(const Vec& x) const {
    Vec y = T_ ? Vec(*T_ * x) : x;
    if (b_) y += *b_;
    return y;
}

double FunctionRep::base_eval(const Vec& x) const {
    switch (kind_) {
        case Kind::Quadratic:
            return x.dot(A_ * x) + a_;
        case Kind::Gaussian:
            return c_ * c_ * x.squaredNorm() / 2;
        case Kind::SEnvelope: {
            double q = 1 - s_ * c_ * c_ * x.squaredNorm();
            if (q <= 0) return kInf;
            return (1 - std::sqrt(q)) / s_;
        }
        case Kind::Sampled: {
            const Grid& g = data_->grid;
            // multilinear interpolation; infinite if any cell corner is infinite
            std::vector<long> base(size_t(g.dim));
            Vec frac(g.dim);
            for (int j = 0; j < g.dim; ++j) {
                double h = (g.upper[j] - g.lower[j]) / (g.counts[size_t(j)] - 1);
                double t = (x[j] - g.lower[j]) / h;
                if (t < 0 || t > g.counts[size_t(j)] - 1) return kInf;
                long i = std::min(long(std::floor(t)), long(g.counts[size_t(j)]) - 2);
                base[size_t(j)] = i;
                frac[j] = t - double(i);
            }
            double acc = 0;
            for (long corner = 0; corner < (1L << g.dim); ++corner) {
                long flat = 0;
                double w = 1;
                for (int j = 0; j < g.dim; ++j) {
                    long bit = (corner >> j) & 1;
                    flat = flat * g.counts[size_t(j)] + base[size_t(j)] + bit;
                    w *= bit ? frac[j] : 1 - frac[j];
                }
                double v = data_->values[size_t(flat)];
                if (!finite(v)) return kInf;
                acc += w * v;
            }
            return acc;
        }
    }
    return kInf;
}

Vec FunctionRep::base_gradient(const Vec& x) const {
    switch (kind_) {
        case Kind::Quadratic:
            return 2 * A_ * x;
        case Kind::Gaussian:
            return c_ * c_ * x;
        case Kind::SEnvelope: {
            double q = 1 - s_ * c_ * c_ * x.squaredNorm();
            if (q <= 0) throw std::domain_error("gradient outside support");
            return (c_ * c_ / std::sqrt(q)) * x;
        }
        case Kind::Sampled: {
            const Grid& g = data_->grid;
            Vec h = g.spacing();
            Vec grad(g.dim);
            for (int j = 0; j < g.dim; ++j) {
                Vec xp = x, xm = x;
                xp[j] += h[j];
                xm[j] -= h[j];
                double fp = base_eval(xp), fm = base_eval(xm);
                if (!finite(fp) || !finite(fm)) throw std::domain_error("gradient stencil leaves domain");
                grad[j] = (fp - fm) / (2 * h[j]);
            }
            return grad;
        }
    }
    throw std::logic_error("unreachable");
}

Mat FunctionRep::base_hessian(const Vec& x) const {
    switch (kind_) {
        case Kind::Quadratic:
            return 2 * A_;
        case Kind::Gaussian:
            return c_ * c_ * Mat::Identity(dim_, dim_);
        case Kind::SEnvelope: {
            double q = 1 - s_ * c_ * c_ * x.squaredNorm();
            if (q <= 0) throw std::domain_error("hessian outside support");
            double w = std::sqrt(q);
            double c2 = c_ * c_;
            return (c2 / w) * Mat::Identity(dim_, dim_) + (s_ * c2 * c2 / (w * w * w)) * (x * x.transpose());
        }
        case Kind::Sampled: {
            const Grid& g = data_->grid;
            Vec h = g.spacing();
            double f0 = base_eval(x);
            if (!finite(f0)) throw std::domain_error("hessian at infinite point");
            Mat H(g.dim, g.dim);
            for (int i = 0; i < g.dim; ++i) {
                Vec xp = x, xm = x;
                xp[i] += h[i];
                xm[i] -= h[i];
                double fp = base_eval(xp), fm = base_eval(xm);
                if (!finite(fp) || !finite(fm)) throw std::domain_error("hessian stencil leaves domain");
                H(i, i) = (fp - 2 * f0 + fm) / (h[i] * h[i]);
                for (int j = i + 1; j < g.dim; ++j) {
                    Vec xpp = x, xpm = x, xmp = x, xmm = x;
                    xpp[i] += h[i]; xpp[j] += h[j];
                    xpm[i] += h[i]; xpm[j] -= h[j];
                    xmp[i] -= h[i]; xmp[j] += h[j];
                    xmm[i] -= h[i]; xmm[j] -= h[j];
                    double v = (base_eval(xpp) - base_eval(xpm) - base_eval(xmp) + base_eval(xmm)) / (4 * h[i] * h[j]);
                    if (!finite(v)) throw std::domain_error("hessian stencil leaves domain");
                    H(i, j) = H(j, i) = v;
                }
            }
            return (H + H.transpose()) / 2;
        }
    }
    throw std::logic_error("unreachable");
}

double FunctionRep::eval(const Vec& x) const {
    if (int(x.size()) != dim_) throw std::invalid_argument("eval: dimension mismatch");
    return base_eval(to_base(x));
}

Vec FunctionRep::gradient(const Vec& x) const {
    if (int(x.size()) != dim_) throw std::invalid_argument("gradient: dimension mismatch");
    Vec g = base_gradient(to_base(x));
    return T_ ? Vec(T_->transpose() * g) : g;
}

Mat FunctionRep::hessian(const Vec& x) const {
    if (int(x.size()) != dim_) throw std::invalid_argument("hessian: dimension mismatch");
    Mat H = base_hessian(to_base(x));
    return T_ ? Mat(T_->transpose() * H * *T_) : H;
}

FunctionRep FunctionRep::compose(const Mat& T) const {
    if (T.rows() != dim_ || T.cols() != dim_) throw std::invalid_argument("compose: dimension mismatch");
    if (std::abs(T.determinant()) < 1e-12) throw std::invalid_argument("compose: singular map");
    if (kind_ == Kind::Quadratic && !has_affine())
        return quadratic(T.transpose() * A_ * T, a_);
    FunctionRep f = *this;
    f.T_ = T_ ? Mat(*T_ * T) : T;
    return f;
}

FunctionRep FunctionRep::translate(const Vec& z) const {
    if (int(z.size()) != dim_) throw std::invalid_argument("translate: dimension mismatch");
    FunctionRep f = *this;
    Vec tz = T_ ? Vec(*T_ * z) : z;
    f.b_ = b_ ? Vec(*b_ + tz) : tz;
    return f;
}

namespace {

struct NodeRecord {
    bool candidate = false;
    bool boundary_cell = false;  // closed-form cell straddling the support edge
    double value = 0;
    Vec grad;
    Mat hess;
    double det = 0;
};

bool sampled_stencil_ok(const FunctionRep& psi, const Grid& grid, long flat) {
    // full 5-point-per-axis block must be finite and inside the grid
    std::vector<long> idx(size_t(grid.dim));
    long rem = flat;
    for (int j = grid.dim - 1; j >= 0; --j) {
        idx[size_t(j)] = rem % grid.counts[size_t(j)];
        rem /= grid.counts[size_t(j)];
    }
    for (int j = 0; j < grid.dim; ++j)
        if (idx[size_t(j)] < 2 || idx[size_t(j)] > grid.counts[size_t(j)] - 3) return false;
    Vec h = grid.spacing();
    Vec x0 = grid.point(flat);
    long block = 1;
    for (int j = 0; j < grid.dim; ++j) block *= 5;
    for (long k = 0; k < block; ++k) {
        long rem2 = k;
        Vec x = x0;
        for (int j = 0; j < grid.dim; ++j) {
            x[j] += (double(rem2 % 5) - 2) * h[j];
            rem2 /= 5;
        }
        if (!finite(psi.eval(x))) return false;
    }
    return true;
}

}  // namespace

RegularSet regular_set(const FunctionRep& psi, const Grid& grid) {
    if (grid.dim != psi.dim()) throw std::invalid_argument("regular_set: dimension mismatch");
    const long total = grid.total();
    const int n = grid.dim;
    const Vec h = grid.spacing();
    const double cellvol = grid.cell_volume();
    const bool closed = psi.closed_form();

    std::vector<NodeRecord> rec(static_cast<size_t>(total));

#pragma omp parallel for schedule(static)
    for (long i = 0; i < total; ++i) {
        NodeRecord& r = rec[size_t(i)];
        Vec x = grid.point(i);
        double v = psi.eval(x);
        bool node_ok = finite(v);
        if (closed) {
            int corners_ok = 0;
            const long ncorners = 1L << n;
            for (long c = 0; c < ncorners; ++c) {
                Vec xc = x;
                for (int j = 0; j < n; ++j) xc[j] += (((c >> j) & 1) ? 0.5 : -0.5) * h[j];
                if (finite(psi.eval(xc))) ++corners_ok;
            }
            if (node_ok && corners_ok == (1L << n)) {
                r.candidate = true;
            } else if (node_ok || corners_ok > 0) {
                r.boundary_cell = true;
            }
        } else {
            r.candidate = node_ok && sampled_stencil_ok(psi, grid, i);
        }
        if (r.candidate) {
            try {
                r.value = v;
                r.grad = psi.gradient(x);
                r.hess = psi.hessian(x);
                r.det = r.hess.determinant();
            } catch (const std::exception&) {
                r.candidate = false;
            }
        }
    }

    // relative invertibility threshold from the median Hessian diagonal
    std::vector<double> diags;
    for (const auto& r : rec)
        if (r.candidate)
            for (int j = 0; j < n; ++j) diags.push_back(r.hess(j, j));
    double det_floor = 1e-300;
    if (!diags.empty()) {
        auto mid = diags.begin() + long(diags.size()) / 2;
        std::nth_element(diags.begin(), mid, diags.end());
        double med = std::max(*mid, 0.0);
        det_floor = std::max(det_floor, tol::det_rel * std::pow(med, n));
    }

    RegularSet rs;
    rs.grid = grid;
    rs.cell_volume = cellvol;
    const int sub = 4;  // subsamples per axis in boundary cells
    long nsub = 1;
    for (int j = 0; j < n; ++j) nsub *= sub;

    for (long i = 0; i < total; ++i) {
        const NodeRecord& r = rec[size_t(i)];
        if (r.candidate && r.det > det_floor) {
            rs.points.push_back(grid.point(i));
            rs.values.push_back(r.value);
            rs.gradients.push_back(r.grad);
            rs.hessians.push_back(r.hess);
            rs.hess_dets.push_back(r.det);
            rs.weights.push_back(cellvol);
        } else if (r.boundary_cell) {
            Vec x0 = grid.point(i);
            for (long k = 0; k < nsub; ++k) {
                long rem = k;
                Vec x = x0;
                for (int j = 0; j < n; ++j) {
                    x[j] += ((double(rem % sub) + 0.5) / sub - 0.5) * h[j];
                    rem /= sub;
                }
                double v = psi.eval(x);
                if (!finite(v)) continue;
                Mat H;
                Vec g;
                try {
                    g = psi.gradient(x);
                    H = psi.hessian(x);
                } catch (const std::exception&) {
                    continue;
                }
                double det = H.determinant();
                if (!(det > det_floor)) continue;
                rs.points.push_back(x);
                rs.values.push_back(v);
                rs.gradients.push_back(g);
                rs.hessians.push_back(H);
                rs.hess_dets.push_back(det);
                rs.weights.push_back(cellvol / double(nsub));
            }
        }
    }

    if (rs.points.empty()) throw std::runtime_error("regular_set: empty (degenerate input)");
    return rs;
}

Grid default_window(const FunctionRep& psi) {
    if (psi.kind() == FunctionRep::Kind::Sampled) return psi.data().grid;
    if (psi.kind() == FunctionRep::Kind::SEnvelope && !psi.has_affine()) {
        double r = 1.0 / (psi.env_c() * std::sqrt(psi.env_s()));
        return Grid::cube(psi.dim(), r, 81);
    }
    // Scale the cube so the potential reaches a deep level set at the
    // boundary; a fixed radius truncates flat potentials badly and lets
    // optimizers exploit the missing tail mass. Probe along the axes.
    const double target = 25.0;  // e^{-25} ~ 1e-11 for the exponential weight
    double r = 3.0;
    for (int it = 0; it < 60; ++it) {
        double lowest = kInf;
        for (int j = 0; j < psi.dim(); ++j) {
            for (double sgn : {-1.0, 1.0}) {
                Vec x = Vec::Zero(psi.dim());
                x[j] = sgn * r;
                double v = psi.eval(x) - psi.eval(Vec::Zero(psi.dim()));
                lowest = std::min(lowest, v);
            }
        }
        if (lowest >= target || !std::isfinite(lowest)) break;
        r *= 1.25;
        if (r > 64) break;
    }
    return Grid::cube(psi.dim(), r, 81);
}

}  // namespace oas
