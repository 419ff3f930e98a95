#include "oas/orliczfn.hpp"

#include <cmath>
#include <stdexcept>

namespace oas {

namespace {

// sample on 64 log-spaced points over [1e-3, 1e3]
std::vector<double> log_samples() {
    std::vector<double> t(64);
    for (int i = 0; i < 64; ++i) t[size_t(i)] = std::pow(10.0, -3 + 6 * i / 63.0);
    return t;
}

}  // namespace

OrliczFunction OrliczFunction::power(double exponent) {
    OrliczFunction h;
    h.power_ = true;
    h.exponent_ = exponent;
    h.map_ = [exponent](double t) { return std::pow(t, exponent); };
    h.constant_ = (exponent == 0);
    h.increasing_ = exponent > 0;
    h.decreasing_ = exponent < 0;
    if (exponent == 0) {
        h.cls_ = Cls::Phi;  // constant belongs to both; Phi by convention
    } else if (exponent < 0 || exponent > 1) {
        h.cls_ = Cls::Phi;  // strictly convex
    } else if (exponent < 1) {
        h.cls_ = Cls::Psi;  // increasing strictly concave
    } else {
        throw std::invalid_argument("orlicz power: exponent 1 is neither strictly convex nor strictly concave");
    }
    h.submultiplicative_ = exponent <= 0;  // (ts)^e <= r^{2e} for ts >= r^2
    h.name_ = "t^" + std::to_string(exponent);
    return h;
}

OrliczFunction OrliczFunction::constant(double value) {
    if (!(value > 0)) throw std::invalid_argument("orlicz constant: value must be positive");
    OrliczFunction h;
    h.map_ = [value](double) { return value; };
    h.constant_ = true;
    h.cls_ = Cls::Phi;
    h.submultiplicative_ = true;
    h.name_ = "const " + std::to_string(value);
    return h;
}

OrliczFunction OrliczFunction::custom(std::function<double(double)> map, Cls cls, std::string name) {
    auto ts = log_samples();
    std::vector<double> vs(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        vs[i] = map(ts[i]);
        if (!(vs[i] > 0) || !std::isfinite(vs[i]))
            throw std::invalid_argument("orlicz custom: map must be positive and finite");
    }
    double vmax = *std::max_element(vs.begin(), vs.end());
    double vmin = *std::min_element(vs.begin(), vs.end());
    bool is_const = (vmax - vmin) <= 1e-12 * vmax;
    bool inc = true, dec = true;
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        if (vs[i + 1] < vs[i]) inc = false;
        if (vs[i + 1] > vs[i]) dec = false;
    }
    if (!is_const) {
        // second-difference sign test on the sample values
        for (size_t i = 1; i + 1 < ts.size(); ++i) {
            double l = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]) - (vs[i] - vs[i - 1]) / (ts[i] - ts[i - 1]);
            double scale = 1e-10 * (std::abs(vs[i]) + 1);
            if (cls == Cls::Phi && l < -scale)
                throw std::invalid_argument("orlicz custom: claimed Phi but not convex at t=" + std::to_string(ts[i]));
            if (cls == Cls::Psi && l > scale)
                throw std::invalid_argument("orlicz custom: claimed Psi but not concave at t=" + std::to_string(ts[i]));
        }
        if (cls == Cls::Psi && !inc)
            throw std::invalid_argument("orlicz custom: claimed Psi but not increasing");
    }
    // submultiplicative spot check on a small product lattice
    bool subm = true;
    for (size_t i = 0; i < ts.size() && subm; i += 7)
        for (size_t j = 0; j < ts.size() && subm; j += 7) {
            double r = std::sqrt(ts[i] * ts[j]);
            if (map(ts[i]) * map(ts[j]) > map(r) * map(r) * (1 + 1e-9)) subm = false;
        }
    OrliczFunction h;
    h.map_ = std::move(map);
    h.cls_ = cls;
    h.constant_ = is_const;
    h.increasing_ = inc && !is_const;
    h.decreasing_ = dec && !is_const;
    h.submultiplicative_ = subm;
    h.name_ = std::move(name);
    return h;
}

}  // namespace oas
