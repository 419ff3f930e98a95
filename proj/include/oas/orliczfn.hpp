#pragma once

#include <functional>
#include <string>

#include "oas/grid.hpp"

namespace oas {

/// Orlicz function h: (0, inf) -> (0, inf) tagged with its class.
/// Phi = constant or strictly convex; Psi = constant or increasing strictly
/// concave. Class claims for custom maps are verified by a second-difference
/// sign test on 64 log-spaced samples at construction.
class OrliczFunction {
public:
    enum class Cls { Phi, Psi };

    /// h(t) = t^e. Class derived: e <= 0 or e >= 1 -> Phi, 0 < e < 1 -> Psi.
    static OrliczFunction power(double exponent);
    /// h(t) = t^{-p/n}, the L_p specialization.
    static OrliczFunction power_p(double p, int n) { return power(-p / double(n)); }
    static OrliczFunction constant(double value);
    static OrliczFunction custom(std::function<double(double)> map, Cls cls, std::string name = "custom");

    double operator()(double t) const { return map_(t); }
    Cls cls() const { return cls_; }
    bool is_inf_problem() const { return cls_ == Cls::Phi; }
    bool is_constant() const { return constant_; }
    bool increasing() const { return increasing_; }
    bool decreasing() const { return decreasing_; }
    /// h(t) h(s) <= h(r)^2 whenever s t >= r^2 (needed by the Santalo-type
    /// product bounds).
    bool submultiplicative() const { return submultiplicative_; }
    bool is_power() const { return power_; }
    double exponent() const { return exponent_; }
    const std::string& name() const { return name_; }

private:
    OrliczFunction() = default;
    std::function<double(double)> map_;
    Cls cls_ = Cls::Phi;
    bool constant_ = false, increasing_ = false, decreasing_ = false;
    bool submultiplicative_ = false, power_ = false;
    double exponent_ = 0;
    std::string name_;
};

}  // namespace oas
