#include "nonlocal/quadrature.hpp"

#include "nonlocal/errors.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <cmath>
#include <numbers>

namespace nonlocal::quad {

// 1/y = int e^{u} exp(-e^{u} y) du, trapezoid in u. The step h and the
// truncation level eta are balanced so that exp(-pi^2/h) ~ eta.
ExpSumRule inverse_exp_sum(double ymin, double ymax, int nodes) {
    if (!(ymin > 0.0) || !(ymax >= ymin) || nodes < 8)
        throw DomainError("inverse_exp_sum: need 0 < ymin <= ymax and nodes >= 8");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double log_eta = -20.0;
    double u_lo = 0, u_hi = 0, h = 0;
    for (int it = 0; it < 60; ++it) {
        const double l = -log_eta;
        u_lo = std::log(ymax) * -1.0 - l;
        u_hi = std::log(l / ymin);
        h = (u_hi - u_lo) / (nodes - 1);
        const double next = -pi2 / h;
        if (std::abs(next - log_eta) < 1e-10) break;
        log_eta = 0.5 * (log_eta + next);
    }
    ExpSumRule rule;
    rule.s.resize(nodes);
    rule.w.resize(nodes);
    for (int q = 0; q < nodes; ++q) {
        const double u = u_lo + q * h;
        rule.s[q] = std::exp(u);
        rule.w[q] = h * std::exp(u);
    }
    return rule;
}

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0) || !(a > 0.0)) throw DomainError("hurwitz_zeta: need s > 1 and a > 0");
    return gsl_sf_hzeta(s, a);
}

} // namespace nonlocal::quad
