#include "oas/weightfn.hpp"

#include <cmath>
#include <stdexcept>

namespace oas {

WeightFunction WeightFunction::exp_neg() {
    WeightFunction f;
    f.kind_ = Kind::ExpNeg;
    f.decreasing_ = true;
    f.logconcave_radial_ = true;  // e^{-|x|^2/2} is log-concave
    return f;
}

WeightFunction WeightFunction::power(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("power weight: alpha must be positive");
    WeightFunction f;
    f.kind_ = Kind::Power;
    f.alpha_ = alpha;
    f.decreasing_ = true;
    f.logconcave_radial_ = false;  // (1 + |x|^2/2)^{-a} has log-convex tails
    return f;
}

WeightFunction WeightFunction::const_one() {
    WeightFunction f;
    f.kind_ = Kind::ConstOne;
    f.decreasing_ = false;
    f.logconcave_radial_ = true;
    return f;
}

WeightFunction WeightFunction::scaled_shifted(WeightFunction base, double shift, double scale) {
    if (!(scale > 0)) throw std::invalid_argument("scaled weight: scale must be positive");
    WeightFunction f;
    f.kind_ = Kind::ScaledShifted;
    f.shift_ = shift;
    f.scale_ = scale;
    f.decreasing_ = base.decreasing_;
    f.logconcave_radial_ = base.logconcave_radial_;
    f.base_ = std::make_shared<WeightFunction>(std::move(base));
    return f;
}

WeightFunction WeightFunction::tabulated(std::vector<double> knots, std::vector<double> values,
                                         bool decreasing, bool logconcave_radial) {
    if (knots.size() != values.size() || knots.size() < 2)
        throw std::invalid_argument("tabulated weight: need matching knots/values, at least 2");
    for (size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1])) throw std::invalid_argument("tabulated weight: knots must increase");
    for (double v : values)
        if (!(v > 0)) throw std::invalid_argument("tabulated weight: values must be positive");
    WeightFunction f;
    f.kind_ = Kind::Tabulated;
    f.knots_ = std::move(knots);
    f.values_ = std::move(values);
    f.decreasing_ = decreasing;
    f.logconcave_radial_ = logconcave_radial;
    return f;
}

double WeightFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::ExpNeg:
            return std::exp(-t);
        case Kind::Power:
            return std::pow(1 + std::max(t, 0.0), -alpha_);
        case Kind::ConstOne:
            return 1.0;
        case Kind::ScaledShifted:
            return scale_ * (*base_)(t - shift_);
        case Kind::Tabulated: {
            const size_t m = knots_.size();
            if (t <= knots_.front()) return values_.front();
            if (t >= knots_.back()) {
                // log-linear tail from the last two knots
                double dk = knots_[m - 1] - knots_[m - 2];
                double lam = (std::log(values_[m - 2]) - std::log(values_[m - 1])) / dk;
                if (lam <= 0) return values_.back();
                return values_.back() * std::exp(-lam * (t - knots_.back()));
            }
            size_t hi = size_t(std::upper_bound(knots_.begin(), knots_.end(), t) - knots_.begin());
            size_t lo = hi - 1;
            double w = (t - knots_[lo]) / (knots_[hi] - knots_[lo]);
            // geometric interpolation: exact on exponential segments and
            // consistent with the log-linear tail
            if (values_[lo] > 0 && values_[hi] > 0)
                return std::exp(std::log(values_[lo]) * (1 - w) + std::log(values_[hi]) * w);
            return values_[lo] * (1 - w) + values_[hi] * w;
        }
    }
    return 1.0;
}

double WeightFunction::cutoff(double eps) const {
    const double f0 = (*this)(0.0);
    double t = 1.0;
    for (int i = 0; i < 200; ++i) {
        if ((*this)(t) <= eps * f0) break;
        t *= 2;
        if (t > 1e12) return kInf;  // no decay within reach
    }
    if ((*this)(t) > eps * f0) return kInf;
    double lo = 0, hi = t;
    for (int i = 0; i < 100; ++i) {
        double mid = (lo + hi) / 2;
        ((*this)(mid) > eps * f0 ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace oas
