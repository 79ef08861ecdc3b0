#include "nonlocal/specfun.hpp"

#include "nonlocal/errors.hpp"

#include <gsl/gsl_sf_dawson.h>

#include <cfloat>
#include <complex>
#include <cmath>
#include <numbers>
#include <string>

namespace nonlocal::specfun {

namespace {

void check_order(double nu) {
    if (nu == 0.0 || nu == 0.5 || nu == 1.0 || nu == 1.5 || nu == 2.0) return;
    throw DomainError("bessel_k: unsupported order " + std::to_string(nu) +
                      " (supported: 0, 1/2, 1, 3/2, 2)");
}

void check_argument(double z) {
    if (!(z > 0.0)) throw DomainError("bessel_k: argument must be positive, got " + std::to_string(z));
}

// Hankel expansion of e^z K_nu(z); used only where e^{-z} would underflow.
double scaled_asymptotic(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * z);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * z)) * sum;
}

} // namespace

BesselValue bessel_k_checked(double nu, double z) {
    check_order(nu);
    check_argument(z);
    const double pre = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
    double v;
    if (nu == 0.5)
        v = pre;
    else if (nu == 1.5)
        v = pre * (1.0 + 1.0 / z);
    else if (z > 705.0)
        v = 0.0;
    else
        v = std::cyl_bessel_k(nu, z);
    if (v < DBL_MIN) return {0.0, true};
    return {v, false};
}

double bessel_k(double nu, double z) { return bessel_k_checked(nu, z).value; }

double bessel_k_scaled(double nu, double z) {
    check_order(nu);
    check_argument(z);
    if (nu == 0.5) return std::sqrt(std::numbers::pi / (2.0 * z));
    if (nu == 1.5) return std::sqrt(std::numbers::pi / (2.0 * z)) * (1.0 + 1.0 / z);
    if (z <= 600.0) return std::exp(z) * std::cyl_bessel_k(nu, z);
    return scaled_asymptotic(nu, z);
}

namespace {

using cplx = std::complex<double>;

// Ascending series (A&S 9.6.11) for K_0, K_1; |z| <= 2.
void series_k01(cplx z, cplx& k0, cplx& k1) {
    const double euler = std::numbers::egamma;
    const cplx q = 0.25 * z * z, lg = std::log(0.5 * z);
    cplx i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
    cplx term = 1.0; // q^k / (k!)^2
    double harm = 0.0;
    for (int k = 0; k < 60; ++k) {
        const double psi1 = -euler + harm, psi2 = -euler + harm + 1.0 / (k + 1.0);
        i0 += term;
        i1 += term / (k + 1.0);
        s0 += psi1 * term;
        s1 += (psi1 + psi2) * term / (k + 1.0);
        harm += 1.0 / (k + 1.0);
        term *= q / ((k + 1.0) * (k + 1.0));
        if (std::abs(term) < 1e-18 * std::abs(i0) && k > 2) break;
    }
    i1 *= 0.5 * z;
    k0 = -lg * i0 + s0;
    k1 = 1.0 / z + lg * i1 - 0.25 * z * s1;
}

// Steed's continued fraction (Temme 1975) for e^z K_0, e^z K_1; |z| >= 2.
void cf2_k01_scaled(cplx z, cplx& k0, cplx& k1) {
    cplx b = 2.0 * (1.0 + z), d = 1.0 / b, h = d, delh = d;
    cplx q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    cplx q = a1, c = a1, s = 1.0 + q * delh;
    double a = -a1;
    for (int i = 2; i < 100000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / static_cast<double>(i);
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-17 * std::abs(s)) break;
    }
    h = a1 * h;
    k0 = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
    k1 = k0 * (z + 0.5 - h) / z;
}

} // namespace

std::complex<double> bessel_k_complex_scaled(int n, std::complex<double> z) {
    if (n < 0 || n > 2) throw DomainError("bessel_k_complex: order must be 0, 1 or 2");
    if (z.real() < 0.0 || z == 0.0) throw DomainError("bessel_k_complex: need Re z >= 0 and z != 0");
    cplx k0, k1;
    if (std::abs(z) <= 2.0) {
        series_k01(z, k0, k1);
        const cplx e = std::exp(z);
        k0 *= e;
        k1 *= e;
    } else {
        cf2_k01_scaled(z, k0, k1);
    }
    if (n == 0) return k0;
    if (n == 1) return k1;
    return k0 + 2.0 / z * k1;
}

std::complex<double> bessel_k_complex(int n, std::complex<double> z) {
    return std::exp(-z) * bessel_k_complex_scaled(n, z);
}

double dawson(double x) { return gsl_sf_dawson(x); }

double erfi(double x) {
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(x * x) * dawson(x);
}

double erfi_scaled(double a, double b) {
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(b * b - a * a) * dawson(b);
}

double gamma(double x) {
    if (x <= 0.0 && x == std::nearbyint(x))
        throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
    return std::tgamma(x);
}

} // namespace nonlocal::specfun
