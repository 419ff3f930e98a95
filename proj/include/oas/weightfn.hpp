#pragma once

#include <memory>
#include <vector>

#include "oas/grid.hpp"

namespace oas {

/// A positive scalar weight F: R -> (0, inf), used in the roles F1, F2 and
/// the envelope F-breve. Tabulated weights extrapolate log-linearly past the
/// last knot so decreasing tails stay integrable.
class WeightFunction {
public:
    enum class Kind { ExpNeg, Power, ConstOne, ScaledShifted, Tabulated };

    static WeightFunction exp_neg();                        // t -> e^{-t}
    static WeightFunction power(double alpha);              // t -> (1 + t_+)^{-alpha}
    static WeightFunction const_one();
    static WeightFunction scaled_shifted(WeightFunction base, double shift, double scale);  // t -> scale * base(t - shift)
    static WeightFunction tabulated(std::vector<double> knots, std::vector<double> values,
                                    bool decreasing, bool logconcave_radial);

    double operator()(double t) const;
    Kind kind() const { return kind_; }
    bool is_decreasing() const { return decreasing_; }
    bool is_logconcave_radial() const { return logconcave_radial_; }

    /// Smallest t >= 0 with F(t) <= eps * F(0); +inf when F does not decay.
    double cutoff(double eps) const;

private:
    WeightFunction() = default;
    Kind kind_ = Kind::ConstOne;
    double alpha_ = 0, shift_ = 0, scale_ = 1;
    std::shared_ptr<const WeightFunction> base_;
    std::vector<double> knots_, values_;
    bool decreasing_ = false, logconcave_radial_ = false;
};

}  // namespace oas
