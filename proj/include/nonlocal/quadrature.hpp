#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <vector>

namespace nonlocal::quad {

//! Composite 20-point Gauss-Legendre rule on [a,b] with equal panels.
template <class F>
auto gauss_panels(F&& f, double a, double b, int panels) {
    using boost::math::quadrature::gauss;
    const auto& x = gauss<double, 20>::abscissa();
    const auto& w = gauss<double, 20>::weights();
    const double h = (b - a) / panels;
    decltype(f(a)) total{};
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h, r = 0.5 * h;
        decltype(f(a)) s{};
        // Boost stores the non-negative half of the even rule; no node sits at 0.
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (f(c - r * x[i]) + f(c + r * x[i]));
        total += r * s;
    }
    return total;
}

//! Panels on [0,b] refined geometrically toward 0 (for endpoint cusps).
template <class F>
auto gauss_graded(F&& f, double b, int levels, int panels_per_level) {
    decltype(f(b)) total{};
    double hi = b;
    for (int l = 0; l < levels; ++l) {
        const double lo = hi / 4.0;
        total += gauss_panels(f, lo, hi, panels_per_level);
        hi = lo;
    }
    total += gauss_panels(f, 0.0, hi, 1);
    return total;
}

//! Nodes/weights with 1/y ~ sum_q w_q exp(-s_q y) for y in [ymin, ymax].
struct ExpSumRule {
    std::vector<double> s;
    std::vector<double> w;
};
ExpSumRule inverse_exp_sum(double ymin, double ymax, int nodes);

//! Hurwitz zeta sum_{n>=0} (n+a)^{-s}, s > 1, a > 0.
double hurwitz_zeta(double s, double a);

} // namespace nonlocal::quad
