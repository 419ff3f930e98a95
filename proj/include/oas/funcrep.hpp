#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "oas/grid.hpp"

namespace oas {

namespace tol {
constexpr double det_rel = 1e-10;   // relative Hessian-invertibility floor
constexpr double sym_rel = 1e-8;    // Hessian symmetry slack
constexpr double cvx_rel = 1e-6;    // per-axis convexity slack for sampled input
constexpr double cut = 1e-12;       // integrand truncation, relative to its max
constexpr double clip_factor = 1e12;  // boundary blow-up clip, relative to median
}  // namespace tol

struct SampledData {
    Grid grid;
    std::vector<double> values;  // kInf marks points outside the domain
};

/// A convex function psi: R^n -> R u {+inf}. Either a tagged closed form or
/// grid samples, optionally pre-composed with an affine map (psi(Tx + b)).
/// Immutable after construction; safe to share across threads.
class FunctionRep {
public:
    enum class Kind { Sampled, Quadratic, Gaussian, SEnvelope };

    FunctionRep() = default;  // empty placeholder; assign before use

    /// psi(x) = <Ax, x> + a  (note: no 1/2, so grad = 2Ax, hess = 2A).
    static FunctionRep quadratic(const Mat& A, double a);
    /// psi(x) = c^2 |x|^2 / 2, the potential of the scaled Gaussian.
    static FunctionRep gaussian(double c, int dim);
    /// psi(x) = (1 - sqrt((1 - s c^2 |x|^2)_+)) / s on |x| < 1/(c sqrt(s)).
    static FunctionRep s_envelope(double s, double c, int dim);
    static FunctionRep sampled(Grid grid, std::vector<double> values);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool closed_form() const { return kind_ != Kind::Sampled; }

    double eval(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;

    /// x -> psi(Tx). T must be invertible. Plain quadratics fold exactly.
    FunctionRep compose(const Mat& T) const;
    /// x -> psi(x + z).
    FunctionRep translate(const Vec& z) const;

    bool has_affine() const { return T_.has_value() || b_.has_value(); }
    const std::optional<Mat>& affine_T() const { return T_; }
    const std::optional<Vec>& affine_b() const { return b_; }

    // closed-form parameter access
    const Mat& quad_A() const { return A_; }
    double quad_a() const { return a_; }
    double gauss_c() const { return c_; }
    double env_s() const { return s_; }
    double env_c() const { return c_; }
    const SampledData& data() const { return *data_; }

private:
    Vec to_base(const Vec& x) const;

    double base_eval(const Vec& x) const;
    Vec base_gradient(const Vec& x) const;
    Mat base_hessian(const Vec& x) const;

    Kind kind_ = Kind::Gaussian;
    int dim_ = 0;
    Mat A_;
    double a_ = 0, c_ = 1, s_ = 0;
    std::shared_ptr<const SampledData> data_;
    std::optional<Mat> T_;
    std::optional<Vec> b_;
};

/// Grid points where psi is finite and the (finite-difference or analytic)
/// Hessian exists and is invertible, with cached derivatives and integration
/// weights. Cells straddling a closed-form support boundary are subsampled so
/// midpoint sums stay accurate near blow-up edges.
struct RegularSet {
    Grid grid;
    double cell_volume = 0;
    std::vector<Vec> points;
    std::vector<double> values;
    std::vector<Vec> gradients;
    std::vector<Mat> hessians;
    std::vector<double> hess_dets;
    std::vector<double> weights;  // quadrature weight per stored point

    size_t size() const { return points.size(); }
};

RegularSet regular_set(const FunctionRep& psi, const Grid& grid);

/// Sampling window when no grid is supplied: the data grid for sampled input,
/// the support box for envelopes, a fixed cube otherwise.
Grid default_window(const FunctionRep& psi);

}  // namespace oas
