#include "nonlocal/symbols.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nonlocal {

MultiplierSymbol MultiplierSymbol::gaussian(double D) {
    if (!(D > 0.0)) throw DomainError("gaussian symbol: D must be positive");
    MultiplierSymbol s;
    s.kind = Kind::gaussian;
    s.D = D;
    return s;
}

MultiplierSymbol MultiplierSymbol::stable(double mu, double gamma) {
    if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("stable symbol: mu must lie in (0,2]");
    if (!(gamma > 0.0)) throw DomainError("stable symbol: gamma must be positive");
    MultiplierSymbol s;
    s.kind = Kind::stable;
    s.mu = mu;
    s.gamma = gamma;
    return s;
}

MultiplierSymbol MultiplierSymbol::salpeter(double m, double c) {
    if (!(m >= 0.0)) throw DomainError("salpeter symbol: m must be non-negative");
    if (!(c > 0.0)) throw DomainError("salpeter symbol: c must be positive");
    MultiplierSymbol s;
    s.kind = Kind::salpeter;
    s.m = m;
    s.c = c;
    return s;
}

double MultiplierSymbol::operator()(double p) const {
    switch (kind) {
    case Kind::gaussian:
        return D * p * p;
    case Kind::stable:
        return p == 0.0 ? 0.0 : gamma * std::pow(std::abs(p), mu);
    case Kind::salpeter: {
        const double mc = m * c;
        // c (sqrt(p^2 + mc^2) - mc) without cancellation.
        return c * p * p / (std::sqrt(p * p + mc * mc) + mc + (p == 0.0 && mc == 0.0 ? 1.0 : 0.0));
    }
    }
    return 0.0;
}

std::string MultiplierSymbol::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case Kind::gaussian:
        os << "gaussian:" << D;
        break;
    case Kind::stable:
        os << "stable:" << mu << ":" << gamma;
        break;
    case Kind::salpeter:
        os << "salpeter:" << m << ":" << c;
        break;
    }
    return os.str();
}

LevyMeasure LevyMeasure::stable(double mu, int dim, double intensity) {
    if (!(mu > 0.0 && mu < 2.0)) throw DomainError("stable Levy measure: mu must lie in (0,2)");
    if (dim != 1 && dim != 3) throw DomainError("Levy measure: dim must be 1 or 3");
    if (!(intensity > 0.0)) throw DomainError("Levy measure: intensity must be positive");
    LevyMeasure v;
    v.family = Family::stable;
    v.mu = mu;
    v.dim = dim;
    v.intensity = intensity;
    return v;
}

LevyMeasure LevyMeasure::relativistic(double mass, int dim, double intensity) {
    if (!(mass >= 0.0)) throw DomainError("relativistic Levy measure: mass must be non-negative");
    if (dim != 1 && dim != 3) throw DomainError("Levy measure: dim must be 1 or 3");
    if (!(intensity > 0.0)) throw DomainError("Levy measure: intensity must be positive");
    LevyMeasure v;
    v.family = Family::relativistic;
    v.mu = 1.0;
    v.mass = mass;
    v.dim = dim;
    v.intensity = intensity;
    return v;
}

LevyMeasure LevyMeasure::matching(const MultiplierSymbol& F) {
    switch (F.kind) {
    case MultiplierSymbol::Kind::stable:
        return stable(F.mu, 1, F.gamma);
    case MultiplierSymbol::Kind::salpeter:
        // c (sqrt(p^2 + (mc)^2) - mc) is c times the mass-(mc) relativistic symbol.
        return relativistic(F.m * F.c, 1, F.c);
    case MultiplierSymbol::Kind::gaussian:
        break;
    }
    throw DomainError("Levy measure: the Gaussian symbol has no jump measure");
}

double LevyMeasure::stable_coefficient() const {
    const double n = dim;
    const double mu_ = family == Family::stable ? mu : 1.0;
    return std::pow(2.0, mu_) * specfun::gamma(0.5 * (mu_ + n)) /
           (std::pow(std::numbers::pi, 0.5 * n) * std::abs(specfun::gamma(-0.5 * mu_)));
}

double LevyMeasure::density(double y) const {
    const double r = std::abs(y);
    if (r == 0.0) throw DomainError("levy_measure_density: y = 0 is a non-integrable singularity");
    if (family == Family::stable || mass == 0.0)
        return intensity * stable_coefficient() * std::pow(r, -(family == Family::stable ? mu : 1.0) - dim);
    const double order = 0.5 * (dim + 1);
    const double pre = 2.0 * std::pow(mass / (2.0 * std::numbers::pi), order);
    return intensity * pre * specfun::bessel_k(order, mass * r) / std::pow(r, order);
}

double LevyMeasure::symbol(double p) const {
    if (family == Family::stable) return p == 0.0 ? 0.0 : intensity * std::pow(std::abs(p), mu);
    return intensity * p * p / (std::sqrt(p * p + mass * mass) + mass + (p == 0.0 && mass == 0.0 ? 1.0 : 0.0));
}

double LevyMeasure::inner_moment(int k, double delta) const {
    if (!(delta > 0.0)) throw DomainError("Levy measure: cutoff must be positive");
    if (dim != 1) throw DomainError("Levy measure: inner moment implemented for dim = 1");
    if (k < 2) throw DomainError("Levy measure: inner moment needs k >= 2");
    const double a = family == Family::stable ? mu : 1.0;
    if (family == Family::stable || mass == 0.0)
        return intensity * stable_coefficient() * std::pow(delta, k - a) / (k - a);
    // (m/pi) int_0^delta y^{k-1} K1(m y) dy = m^{1-k}/pi int_0^{m delta} z^{k-2} (z K1(z)) dz.
    auto f = [k](double z) { return z == 0.0 ? (k == 2 ? 1.0 : 0.0) : std::pow(z, k - 1) * specfun::bessel_k(1.0, z); };
    const double I = quad::gauss_graded(f, mass * delta, 30, 2);
    return intensity * I * std::pow(mass, 1 - k) / std::numbers::pi;
}

double LevyMeasure::image_density(double y, double period) const {
    if (dim != 1) throw DomainError("Levy measure: periodization implemented for dim = 1");
    const double r = std::abs(y);
    if (!(r <= 0.5 * period)) throw DomainError("Levy measure: periodized density needs |y| <= P/2");
    double images = 0.0;
    if (family == Family::stable || mass == 0.0) {
        const double s = 1.0 + (family == Family::stable ? mu : 1.0);
        images = intensity * stable_coefficient() * std::pow(period, -s) *
                 (quad::hurwitz_zeta(s, 1.0 + r / period) + quad::hurwitz_zeta(s, 1.0 - r / period));
    } else {
        const double first = density(period - r);
        const long cap = 200000;
        long n = 1;
        for (; n <= cap; ++n) {
            const double a = density(n * period + r), b = density(n * period - r);
            images += a + b;
            if (a + b <= 1e-18 * first) break;
        }
        if (n > cap) {
            // Remaining images sit where m|y| << 1: the Cauchy 1/(pi y^2) law.
            const double P2 = period * period;
            images += intensity / (std::numbers::pi * P2) *
                      (quad::hurwitz_zeta(2.0, cap + 1.0 + r / period) + quad::hurwitz_zeta(2.0, cap + 1.0 - r / period));
        }
    }
    return images;
}

double LevyMeasure::periodized_density(double y, double period) const {
    return density(y) + image_density(y, period);
}

} // namespace nonlocal
