#include "nonlocal/kernels.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;

void check_dim(int dim) {
    if (dim != 1 && dim != 3) throw DomainError("kernel: dim must be 1 or 3");
}

// Bergstrom series for the unit-scale stable density; returns false when the
// terms grow too large to sum without cancellation.
bool stable_series(double mu, int dim, double r, KernelValue& out) {
    const double lr = std::log(r);
    double sum = 0.0, biggest = 0.0, last = 0.0;
    int k = 1;
    for (; k <= 600; ++k) {
        const double s = std::sin(0.5 * pi * mu * k);
        const double lg = std::lgamma(mu * k + (dim == 1 ? 1.0 : 2.0)) - std::lgamma(k + 1.0);
        const double mag = std::exp(lg - (mu * k + dim) * lr);
        const double term = (k % 2 == 1 ? 1.0 : -1.0) * s * mag;
        // Asymptotic (mu > 1): stop at the smallest term.
        if (mu > 1.0 && k > 2 && mag > last && last > 0.0) break;
        sum += term;
        biggest = std::max(biggest, mag);
        last = mag;
        if (mag < 1e-17 * std::abs(sum) && k > 3) break;
    }
    const double norm = dim == 1 ? 1.0 / pi : 1.0 / (2.0 * pi * pi);
    if (!(last < 1e-12 * std::abs(sum)) || biggest > 1e4 * std::abs(sum)) return false;
    out.value = norm * sum;
    out.error = norm * (last + 1e-16 * biggest);
    return true;
}

double stable_cutoff(double mu, int dim) {
    // u^{dim-1} exp(-u^mu) < 1e-16 beyond U.
    double U = std::pow(37.0, 1.0 / mu);
    for (int i = 0; i < 50 && dim == 3; ++i) U = std::pow(37.0 + 2.0 * std::log(std::max(U, 1.0)), 1.0 / mu);
    return U;
}

double stable_quadrature(double mu, int dim, double r, int refine) {
    const double U = stable_cutoff(mu, dim);
    auto f = [&](double u) {
        const double e = std::exp(-std::pow(u, mu));
        if (dim == 1) return std::cos(u * r) * e;
        const double z = u * r;
        const double sinc = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        return u * u * sinc * e;
    };
    const int panels = refine * (static_cast<int>(std::ceil((U - 1.0) * (r + 1.0) / 1.5)) + 4);
    const double I = quad::gauss_graded(f, 1.0, 20, refine) + quad::gauss_panels(f, 1.0, U, panels);
    return dim == 1 ? I / pi : I / (2.0 * pi * pi);
}

KernelValue stable_unit(double mu, int dim, double r) {
    r = std::abs(r);
    KernelValue v;
    const double sw = mu < 1.0 ? 0.5 : 30.0;
    if (r >= sw && stable_series(mu, dim, r, v)) return v;
    const double fine = stable_quadrature(mu, dim, r, 2);
    const double coarse = stable_quadrature(mu, dim, r, 1);
    v.value = fine;
    v.error = std::abs(fine - coarse);
    return v;
}

} // namespace

KernelFamily KernelFamily::heat(double D, int dim) {
    check_dim(dim);
    if (!(D > 0.0)) throw DomainError("heat kernel: D must be positive");
    KernelFamily f;
    f.tag = Tag::heat;
    f.D = D;
    f.dim = dim;
    return f;
}

KernelFamily KernelFamily::stable(double mu, double gamma, int dim) {
    check_dim(dim);
    if (!(mu > 0.0 && mu < 2.0)) throw DomainError("stable kernel: mu must lie in (0,2)");
    if (!(gamma > 0.0)) throw DomainError("stable kernel: gamma must be positive");
    KernelFamily f;
    f.tag = Tag::stable;
    f.mu = mu;
    f.gamma = gamma;
    f.dim = dim;
    return f;
}

KernelFamily KernelFamily::cauchy(double c, int dim) {
    check_dim(dim);
    if (!(c > 0.0)) throw DomainError("cauchy kernel: c must be positive");
    KernelFamily f;
    f.tag = Tag::cauchy;
    f.c = c;
    f.dim = dim;
    return f;
}

KernelFamily KernelFamily::relativistic(double m, double c, int dim) {
    check_dim(dim);
    if (!(m >= 0.0)) throw DomainError("relativistic kernel: m must be non-negative");
    if (!(c > 0.0)) throw DomainError("relativistic kernel: c must be positive");
    KernelFamily f;
    f.tag = Tag::relativistic;
    f.m = m;
    f.c = c;
    f.dim = dim;
    return f;
}

double KernelFamily::exponent(double p) const {
    switch (tag) {
    case Tag::heat:
        return D * p * p;
    case Tag::stable:
        return p == 0.0 ? 0.0 : gamma * std::pow(std::abs(p), mu);
    case Tag::cauchy:
        return c * std::abs(p);
    case Tag::relativistic: {
        const double mc = m * c;
        return p == 0.0 ? 0.0 : c * p * p / (std::sqrt(p * p + mc * mc) + mc);
    }
    }
    return 0.0;
}

KernelValue semigroup_kernel_eval(const KernelFamily& fam, double x, double t) {
    if (!(t > 0.0)) throw DomainError("semigroup_kernel: t must be positive");
    const double n = fam.dim;
    const double r = std::abs(x);
    KernelValue v;
    switch (fam.tag) {
    case KernelFamily::Tag::heat:
        v.value = std::pow(4.0 * pi * fam.D * t, -0.5 * n) * std::exp(-r * r / (4.0 * fam.D * t));
        return v;
    case KernelFamily::Tag::cauchy: {
        const double ct = fam.c * t;
        v.value = specfun::gamma(0.5 * (n + 1.0)) * ct / std::pow(pi * (r * r + ct * ct), 0.5 * (n + 1.0));
        return v;
    }
    case KernelFamily::Tag::relativistic: {
        if (fam.m == 0.0) return semigroup_kernel_eval(KernelFamily::cauchy(fam.c, fam.dim), x, t);
        const double M = fam.m * fam.c, tau = fam.c * t;
        const double s = std::hypot(r, tau);
        const double order = 0.5 * (n + 1.0);
        // 2 (M/2pi)^{(n+1)/2} tau e^{M tau} K_{(n+1)/2}(M s) / s^{(n+1)/2}, with tau = ct.
        const double pre = 2.0 * std::pow(M / (2.0 * pi), order) * tau / std::pow(s, order);
        v.value = pre * std::exp(M * (tau - s)) * specfun::bessel_k_scaled(order, M * s);
        return v;
    }
    case KernelFamily::Tag::stable: {
        const double scale = std::pow(fam.gamma * t, 1.0 / fam.mu);
        KernelValue u = stable_unit(fam.mu, fam.dim, r / scale);
        const double f = std::pow(scale, -n);
        v.value = f * u.value;
        v.error = f * u.error;
        return v;
    }
    }
    return v;
}

double semigroup_kernel(const KernelFamily& fam, double x, double t) { return semigroup_kernel_eval(fam, x, t).value; }

double mehler_kernel(double y, double x, double t) {
    if (!(t > 0.0)) throw DomainError("mehler_kernel: t must be positive");
    const double a = std::exp(-t), q = -std::expm1(-2.0 * t);
    const double d = x - a * y;
    return std::exp(0.5 * (x * x - y * y) - d * d / q) / std::sqrt(pi * q);
}

double mehler_kernel_hyperbolic(double y, double x, double t) {
    if (!(t > 0.0)) throw DomainError("mehler_kernel: t must be positive");
    const double sh = std::sinh(t), ch = std::cosh(t);
    return std::exp(0.5 * t - ((x * x + y * y) * ch - 2.0 * x * y) / (2.0 * sh)) / std::sqrt(2.0 * pi * sh);
}

double ou_transition(double u, double s, double v, double t, double beta, double D) {
    if (!(t > s)) throw DomainError("ou_transition: need t > s");
    if (!(beta > 0.0) || !(D > 0.0)) throw DomainError("ou_transition: beta and D must be positive");
    const double var = beta * D * -std::expm1(-2.0 * beta * (t - s));
    const double d = v - u * std::exp(-beta * (t - s));
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * pi * var);
}

double ou_stationary(double v, double beta, double D) {
    return std::exp(-v * v / (2.0 * beta * D)) / std::sqrt(2.0 * pi * beta * D);
}

double ou_correlation(double tp, double t) {
    if (t < tp) throw DomainError("ou_correlation: need t >= t'");
    return 0.5 * std::exp(-(t - tp));
}

double ou_correlation_quadrature(double tp, double t) {
    if (t < tp) throw DomainError("ou_correlation: need t >= t'");
    if (t == tp) {
        auto f = [](double x) { return x * x * ou_stationary(x, 1.0, 0.5); };
        return quad::gauss_panels(f, -12.0, 12.0, 24);
    }
    auto outer = [&](double xp) {
        auto in = [&](double x) { return x * ou_transition(xp, tp, x, t, 1.0, 0.5); };
        const double m = xp * std::exp(-(t - tp));
        return ou_stationary(xp, 1.0, 0.5) * xp * quad::gauss_panels(in, m - 12.0, m + 12.0, 24);
    };
    return quad::gauss_panels(outer, -12.0, 12.0, 24);
}

} // namespace nonlocal
