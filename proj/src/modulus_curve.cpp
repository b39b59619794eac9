#include "weakconv/modulus_curve.hpp"

#include <algorithm>
#include <cmath>

namespace weakconv {

ModulusCurve::ModulusCurve() : samples_{{0.0, 0.0}} {}

ModulusCurve ModulusCurve::from_samples(std::vector<std::pair<double, double>> samples,
                                        bool monotonize) {
    std::sort(samples.begin(), samples.end());
    ModulusCurve c;
    c.samples_.clear();
    c.samples_.emplace_back(0.0, 0.0);
    double running = 0.0;
    for (auto& [eps, v] : samples) {
        if (eps < 0.0) throw DomainError("modulus curve sample with negative eps");
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError("modulus curve sample with invalid value");
        if (eps == 0.0) {
            if (v != 0.0) throw DomainError("modulus curve must vanish at eps = 0");
            continue;
        }
        double vv = v;
        if (monotonize) {
            running = std::max(running, v);
            vv = running;
        }
        c.samples_.emplace_back(eps, vv);
    }
    if (!monotonize && !c.nondecreasing())
        throw DomainError("modulus curve samples are not nondecreasing");
    return c;
}

ModulusCurve ModulusCurve::from_function(const std::function<double(double)>& f,
                                         const std::vector<double>& grid,
                                         bool monotonize) {
    std::vector<std::pair<double, double>> s;
    s.reserve(grid.size());
    for (double eps : grid)
        if (eps > 0.0) s.emplace_back(eps, f(eps));
    return from_samples(std::move(s), monotonize);
}

double ModulusCurve::value(double eps) const {
    if (eps <= 0.0) return 0.0;
    auto it = std::lower_bound(samples_.begin(), samples_.end(),
                               std::make_pair(eps, -1.0));
    if (it == samples_.end()) return samples_.back().second;
    return it->second;
}

double ModulusCurve::domain_max() const { return samples_.back().first; }

bool ModulusCurve::nondecreasing(double tol) const {
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (samples_[i].second < samples_[i - 1].second - tol) return false;
    return true;
}

std::function<double(double)> ModulusCurve::as_function() const {
    return [c = *this](double eps) { return c.value(eps); };
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g;
    if (n <= 0) return g;
    if (n == 1) {
        g.push_back(lo);
        return g;
    }
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return g;
}

}  // namespace weakconv
