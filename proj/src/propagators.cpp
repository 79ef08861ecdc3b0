#include "nonlocal/propagators.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void check_reg(const PropagatorFamily& fam, double t, Regularization reg) {
    if (reg.eps < 0.0) throw DomainError("quantum_propagator: eps must be non-negative");
    if (fam.pole_family() && reg.eps == 0.0)
        throw DomainError("quantum_propagator: eps = 0 hits the light-cone singularity at |x| = c t; "
                          "a positive regularization is required");
    if (!fam.pole_family() && reg.eps == 0.0 && t == 0.0)
        throw DomainError("quantum_propagator: the t = 0 kernel is a delta function");
}

void check_resolution(double eps, double c, double dx, Diagnostics* diag) {
    if (diag && eps * c < 5.0 * dx) {
        std::ostringstream os;
        os << "propagate_with_kernel: eps c = " << eps * c << " resolves the light-cone pole with fewer than 5 nodes";
        diag->warn(os.str());
    }
}

} // namespace

PropagatorFamily PropagatorFamily::gaussian_free() {
    PropagatorFamily f;
    f.tag = Tag::gaussian_free_1d;
    return f;
}

PropagatorFamily PropagatorFamily::oscillator() {
    PropagatorFamily f;
    f.tag = Tag::oscillator_1d;
    return f;
}

PropagatorFamily PropagatorFamily::cauchy(double c, int dim) {
    if (!(c > 0.0)) throw DomainError("propagator: c must be positive");
    if (dim != 1 && dim != 3) throw DomainError("propagator: dim must be 1 or 3");
    PropagatorFamily f;
    f.tag = dim == 1 ? Tag::cauchy_1d : Tag::cauchy_3d;
    f.c = c;
    return f;
}

PropagatorFamily PropagatorFamily::salpeter(double m, double c, int dim) {
    if (!(m >= 0.0)) throw DomainError("propagator: m must be non-negative");
    if (!(c > 0.0)) throw DomainError("propagator: c must be positive");
    if (dim != 1 && dim != 3) throw DomainError("propagator: dim must be 1 or 3");
    PropagatorFamily f;
    f.tag = dim == 1 ? Tag::salpeter_1d : Tag::salpeter_3d;
    f.m = m;
    f.c = c;
    return f;
}

PropagatorFamily PropagatorFamily::one_dimensional() const {
    PropagatorFamily f = *this;
    if (tag == Tag::cauchy_3d) f.tag = Tag::cauchy_1d;
    if (tag == Tag::salpeter_3d) f.tag = Tag::salpeter_1d;
    return f;
}

double PropagatorFamily::dispersion(double p) const {
    switch (tag) {
    case Tag::gaussian_free_1d:
        return p * p;
    case Tag::oscillator_1d:
        throw DomainError("propagator: the oscillator has no translation-invariant dispersion");
    case Tag::cauchy_1d:
    case Tag::cauchy_3d:
        return c * std::abs(p);
    case Tag::salpeter_1d:
    case Tag::salpeter_3d: {
        const double mc = m * c;
        return p == 0.0 ? 0.0 : c * p * p / (std::sqrt(p * p + mc * mc) + mc);
    }
    }
    return 0.0;
}

Regularization default_regularization(const PropagatorFamily& fam, double dx) {
    return {std::max(10.0 * dx / fam.c, 1e-3 / fam.c)};
}

cplx propagator_multiplier(const PropagatorFamily& fam, double p, double t, Regularization reg) {
    return std::exp(-I * fam.dispersion(p) * cplx(t, -reg.eps));
}

cplx oscillator_propagator(double y, double x, double t, Regularization reg) {
    if (reg.eps < 0.0) throw DomainError("oscillator_propagator: eps must be non-negative");
    const cplx s(reg.eps, t); // Mehler kernel at complex time eps + i t
    const cplx sh = std::sinh(s), ch = std::cosh(s);
    if (std::abs(sh) < 1e-12)
        throw DomainError("oscillator_propagator: caustic at sin t = 0 (kernel is a delta function)");
    return std::exp(0.5 * s - ((x * x + y * y) * ch - 2.0 * x * y) / (2.0 * sh)) / std::sqrt(2.0 * pi * sh);
}

cplx quantum_propagator(const PropagatorFamily& fam, double x, double t, Regularization reg) {
    check_reg(fam, t, reg);
    const cplx s(reg.eps, t); // i (t - i eps)
    const double r = std::abs(x);
    using Tag = PropagatorFamily::Tag;
    switch (fam.tag) {
    case Tag::gaussian_free_1d:
        return std::exp(-x * x / (4.0 * s)) / std::sqrt(4.0 * pi * s);
    case Tag::oscillator_1d:
        return oscillator_propagator(0.0, x, t, reg);
    case Tag::cauchy_1d: {
        const cplx tau = fam.c * s;
        return tau / (pi * (r * r + tau * tau));
    }
    case Tag::cauchy_3d: {
        const cplx tau = fam.c * s, d = r * r + tau * tau;
        return tau / (pi * pi * d * d);
    }
    case Tag::salpeter_1d:
    case Tag::salpeter_3d: {
        if (fam.m == 0.0) return quantum_propagator(PropagatorFamily::cauchy(fam.c, fam.dim()), x, t, reg);
        const double M = fam.m * fam.c;
        const cplx tau = fam.c * s, w = std::sqrt(r * r + tau * tau);
        const cplx e = std::exp(M * (tau - w));
        if (fam.tag == Tag::salpeter_1d) return M * tau / pi * e * specfun::bessel_k_complex_scaled(1, M * w) / w;
        return M * M * tau / (2.0 * pi * pi) * e * specfun::bessel_k_complex_scaled(2, M * w) / (w * w);
    }
    }
    return 0.0;
}

cplx quantum_propagator_fourier(const PropagatorFamily& fam, double x, double t, Regularization reg) {
    if (!(reg.eps > 0.0)) throw DomainError("quantum_propagator_fourier: needs eps > 0 for convergence");
    if (fam.tag == PropagatorFamily::Tag::oscillator_1d)
        throw DomainError("quantum_propagator_fourier: oscillator kernel is not a Fourier multiplier");
    const cplx s(reg.eps, t);
    const double r = std::abs(x);
    // exp(-eps F(P)) = e^{-40}
    double P = 1.0;
    while (reg.eps * fam.dispersion(P) < 40.0) P *= 1.25;
    const double slope = (fam.dispersion(P) - fam.dispersion(0.8 * P)) / (0.2 * P);
    const int panels = static_cast<int>(std::ceil(P * (r + std::abs(t) * slope + 1.0) / 1.5)) + 8;
    if (fam.dim() == 1) {
        auto f = [&](double p) { return std::cos(p * r) * std::exp(-fam.dispersion(p) * s); };
        return quad::gauss_panels(f, 0.0, P, panels) / pi;
    }
    auto f = [&](double p) {
        const double z = p * r;
        const double sinc = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        return p * p * sinc * std::exp(-fam.dispersion(p) * s);
    };
    return quad::gauss_panels(f, 0.0, P, panels) / (2.0 * pi * pi);
}

WaveField propagate_with_kernel(const WaveField& psi0, const PropagatorFamily& fam, double t, Regularization reg,
                                Diagnostics* diag) {
    if (fam.dim() != 1) throw DomainError("propagate_with_kernel: use propagate_radial_with_kernel in 3D");
    const auto& g = psi0.grid;
    const std::size_t N = g.n();
    const double dx = g.dx();
    if (diag) {
        double edge = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            if (std::abs(g.x(j)) > 0.95 * g.L()) edge += std::norm(psi0.values[j]);
        diag->wrap_mass = edge * dx;
        if (diag->wrap_mass >= 1e-8) {
            std::ostringstream os;
            os << "propagate_with_kernel: mass near the box edge " << diag->wrap_mass << " exceeds 1e-8";
            diag->warn(os.str());
        }
        if (fam.pole_family()) check_resolution(reg.eps, fam.c, dx, diag);
    }
    if (t == 0.0 && reg.eps == 0.0) return psi0;
    if (fam.tag == PropagatorFamily::Tag::oscillator_1d) {
        check_reg(fam, t, reg);
        CVec out(N);
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < N; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < N; ++j) s += oscillator_propagator(g.x(j), g.x(i), t, reg) * psi0.values[j];
            out[i] = s * dx;
        }
        return WaveField(g, std::move(out));
    }
    check_reg(fam, t, reg);
    const std::size_t M = 2 * N;
    CVec a(M, 0.0), k(M);
    std::copy(psi0.values.begin(), psi0.values.end(), a.begin());
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < M; ++j) {
        const double x = (j <= N ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(M)) * dx;
        k[j] = quantum_propagator(fam, x, t, reg);
    }
    fft::forward(a);
    fft::forward(k);
    for (std::size_t j = 0; j < M; ++j) a[j] *= k[j];
    fft::inverse(a);
    CVec out(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(N));
    for (auto& z : out) z *= dx;
    return WaveField(g, std::move(out));
}

RadialField propagate_radial_with_kernel(const RadialField& psi0, const PropagatorFamily& fam, double t,
                                         Regularization reg, Diagnostics* diag) {
    if (!fam.pole_family()) throw DomainError("propagate_radial_with_kernel: needs a cauchy or salpeter family");
    // For radial fields (u = r psi) the 3D kernel acts as the 1D kernel of
    // the same dispersion on the odd extension of u.
    const auto& rg = psi0.grid;
    const std::size_t n = rg.n();
    const Grid1D g(2 * n, rg.R());
    CVec odd(2 * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        odd[n + 1 + i] = psi0.u[i];
        odd[n - 1 - i] = -psi0.u[i];
    }
    const WaveField out = propagate_with_kernel(WaveField(g, std::move(odd)), fam.one_dimensional(), t, reg, diag);
    CVec u(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) u[i] = out.values[n + 1 + i];
    return RadialField(rg, std::move(u));
}

WaveField naive_cauchy_propagate(const WaveField& psi0, double t) {
    // PV of i t / pi (x^2 - t^2) has the transform -i sin(|p| t): the
    // delta pair carrying cos(|p| t) is missing.
    const auto& g = psi0.grid;
    return WaveField(g, apply_multiplier(g, psi0.values, [t](double p) { return cplx(0.0, -std::sin(std::abs(p) * t)); }));
}

} // namespace nonlocal
