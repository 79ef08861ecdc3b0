#pragma once

#include <complex>

namespace nonlocal::specfun {

struct BesselValue {
    double value = 0.0;
    bool underflow = false;
};

//! K_nu(z) for nu in {0, 1/2, 1, 3/2, 2} and z > 0.
double bessel_k(double nu, double z);
BesselValue bessel_k_checked(double nu, double z);
//! e^z K_nu(z); finite for arbitrarily large z.
double bessel_k_scaled(double nu, double z);

//! e^z K_n(z) for n in {0, 1, 2}, complex z with Re z >= 0, z != 0.
std::complex<double> bessel_k_complex_scaled(int n, std::complex<double> z);
std::complex<double> bessel_k_complex(int n, std::complex<double> z);

double dawson(double x);
double erfi(double x);
//! e^{-a^2} erfi(b), evaluated without forming e^{b^2}.
double erfi_scaled(double a, double b);

//! Gamma function; throws DomainError at poles.
double gamma(double x);

} // namespace nonlocal::specfun
