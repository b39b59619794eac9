#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "weakconv/common.hpp"

namespace weakconv {

// Sampled nondecreasing function eps -> value with value(0) = 0.  Evaluation
// between samples uses the right neighbor (continuity from the right); past
// the last sample the curve stays at its final value.
class ModulusCurve {
public:
    ModulusCurve();  // identically zero

    static ModulusCurve from_samples(std::vector<std::pair<double, double>> samples,
                                     bool monotonize = false);
    static ModulusCurve from_function(const std::function<double(double)>& f,
                                      const std::vector<double>& grid,
                                      bool monotonize = false);
    static ModulusCurve zero() { return ModulusCurve(); }

    double value(double eps) const;
    double operator()(double eps) const { return value(eps); }

    double domain_max() const;
    bool nondecreasing(double tol = 0.0) const;
    std::size_t size() const { return samples_.size(); }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    std::function<double(double)> as_function() const;

private:
    std::vector<std::pair<double, double>> samples_;  // sorted, begins at (0, 0)
};

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace weakconv
