#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/evolution.hpp"
#include "nonlocal/generators.hpp"
#include "nonlocal/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace nonlocal;
using std::numbers::pi;

namespace {

// Cauchy density summed over the images of a box of half-length L, and its current.
double cauchy_periodic(double x, double lam, double L) {
    const double s = pi * lam / L;
    return std::sinh(s) / (2 * L * (std::cosh(s) - std::cos(pi * x / L)));
}
double cauchy_periodic_dlam(double x, double lam, double L) {
    const double s = pi * lam / L, C = std::cosh(s) - std::cos(pi * x / L);
    return pi / (2 * L * L) * (1 - std::cosh(s) * std::cos(pi * x / L)) / (C * C);
}
double cauchy_periodic_current(double x, double lam, double L) {
    const double s = pi * lam / L;
    return std::sin(pi * x / L) / (2 * L * (std::cosh(s) - std::cos(pi * x / L)));
}

WaveField real_field(const Grid1D& g, const std::function<double(double)>& f) {
    return WaveField::from_function(g, [&](double x) { return cplx(f(x), 0.0); });
}

double linf(const WaveField& a, const std::function<double(double)>& f, double xmax = 1e300) {
    double e = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double x = a.grid.x(j);
        if (std::abs(x) <= xmax) e = std::max(e, std::abs(a.values[j] - f(x)));
    }
    return e;
}

double peak(const WaveField& a) {
    double m = 0.0;
    for (const auto& v : a.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("symbol invariants") {
    const MultiplierSymbol syms[] = {MultiplierSymbol::gaussian(0.7), MultiplierSymbol::stable(0.5),
                                     MultiplierSymbol::stable(1.5, 2.0), MultiplierSymbol::salpeter(1.3, 0.8)};
    for (const auto& F : syms) {
        CHECK(F(0.0) == 0.0);
        for (double p : {0.1, 1.0, 7.0, 300.0}) {
            CHECK(F(p) >= 0.0);
            CHECK(F(p) == F(-p));
        }
    }
    for (double p : {0.0, 0.3, 5.0, 1e4})
        CHECK(MultiplierSymbol::salpeter(0.0, 1.7)(p) == doctest::Approx(MultiplierSymbol::stable(1.0, 1.7)(p)).epsilon(1e-15));
    CHECK(MultiplierSymbol::salpeter(2.0)(3.0) == doctest::Approx(std::sqrt(13.0) - 2.0).epsilon(1e-14));
    // No cancellation for tiny momenta.
    CHECK(MultiplierSymbol::salpeter(1e4)(1e-6) == doctest::Approx(1e-12 / 2e4).epsilon(1e-10));
}

TEST_CASE("Cauchy symbol on the Lorentzian") {
    const Grid1D g(1 << 15, 400.0);
    const double lam = 1.0;
    const auto rho = real_field(g, [&](double x) { return cauchy_periodic(x, lam, g.L()); });
    const auto out = apply_symbol(rho, MultiplierSymbol::stable(1.0));
    // Periodic oracle: |p| e^{-lam |p|} = -d/dlam e^{-lam |p|}.
    CHECK(linf(out, [&](double x) { return -cauchy_periodic_dlam(x, lam, g.L()); }) < 1e-10);
    // Whole-line formula holds up to the image sum, O(1/L^2).
    CHECK(linf(out, [&](double x) { return (lam * lam - x * x) / (pi * std::pow(lam * lam + x * x, 2)); }, 20.0) < 1e-5);
}

TEST_CASE("Gaussian symbol is minus the Laplacian") {
    const Grid1D g(1024, 20.0);
    const auto f = real_field(g, [](double x) { return std::exp(-x * x / 2); });
    const auto out = apply_symbol(f, MultiplierSymbol::gaussian(1.0));
    CHECK(linf(out, [](double x) { return (1 - x * x) * std::exp(-x * x / 2); }) < 1e-12);
}

TEST_CASE("unresolved spectrum raises a warning") {
    const Grid1D g(128, 20.0);
    const auto f = real_field(g, [](double x) { return std::exp(-50 * x * x); });
    Diagnostics d;
    apply_symbol(f, MultiplierSymbol::stable(1.0), &d);
    CHECK_FALSE(d.warnings.empty());
    CHECK(d.spectral_tail > 1e-12);
    Diagnostics ok;
    apply_symbol(real_field(g, [](double x) { return std::exp(-x * x / 2); }), MultiplierSymbol::stable(1.0), &ok);
    CHECK(ok.warnings.empty());
}

TEST_CASE("Salpeter mean energy of a narrow-band packet") {
    const Grid1D g(1 << 15, 800.0);
    const auto F = MultiplierSymbol::salpeter(2.0);
    const double target = std::sqrt(13.0) - 2.0;
    double prev = 1e300;
    for (double sigma : {0.5, 0.2, 0.05}) {
        auto psi = WaveField::from_function(g, [&](double x) { return std::exp(-sigma * sigma * x * x + cplx(0, 3 * x)); });
        const double nrm = psi.norm();
        for (auto& v : psi.values) v /= nrm;
        const double E = inner(psi, apply_symbol(psi, F)).real();
        const double gap = std::abs(E - target);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("jump-integral route on constants and the Lorentzian") {
    const Grid1D g(4096, 25.6);
    const auto one = real_field(g, [](double) { return 1.0; });
    CHECK(peak(apply_levy_generator(one, LevyMeasure::stable(1.0))) < 1e-10);
    CHECK(peak(apply_levy_generator(one, LevyMeasure::relativistic(1.0))) < 1e-10);

    const auto rho = real_field(g, [&](double x) { return cauchy_periodic(x, 1.0, g.L()); });
    const auto a = apply_levy_generator(rho, LevyMeasure::stable(1.0));
    const auto b = apply_symbol(rho, MultiplierSymbol::stable(1.0));
    double gap = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) gap = std::max(gap, std::abs(a.values[j] + b.values[j]));
    CHECK(gap / peak(b) <= 1e-4);
    const auto m = master_rhs(rho, LevyMeasure::stable(1.0));
    CHECK(linf(m, [&](double x) { return cauchy_periodic_dlam(x, 1.0, g.L()); }) / peak(b) <= 1e-4);
}

TEST_CASE("route agreement across families and test fields") {
    const Grid1D g(4096, 25.6);
    const std::function<double(double)> fields[] = {
        [](double x) { return std::exp(-x * x); },
        [&](double x) { return cauchy_periodic(x, 1.0, g.L()); },
        [](double x) { return std::exp(-x * x) * std::cos(3 * x); }};
    const MultiplierSymbol syms[] = {MultiplierSymbol::stable(0.5), MultiplierSymbol::stable(1.0),
                                     MultiplierSymbol::stable(1.5), MultiplierSymbol::salpeter(0.0),
                                     MultiplierSymbol::salpeter(1.0)};
    for (const auto& f : fields)
        for (const auto& F : syms) {
            const auto psi = real_field(g, f);
            const auto a = apply_levy_generator(psi, LevyMeasure::matching(F));
            const auto b = apply_symbol(psi, F);
            double gap = 0.0;
            for (std::size_t j = 0; j < g.n(); ++j)
                if (std::abs(g.x(j)) <= 10) gap = std::max(gap, std::abs(a.values[j] + b.values[j]));
            CAPTURE(F.describe());
            CHECK(gap / peak(b) <= 1e-4);
        }
}

TEST_CASE("serial and parallel jump integrals agree exactly") {
    const Grid1D g(1024, 20.0);
    const auto f = real_field(g, [](double x) { return std::exp(-x * x) * (1 + x); });
    LevyOptions s, p;
    s.exec = Execution::serial;
    p.exec = Execution::parallel;
    const auto a = apply_levy_generator(f, LevyMeasure::stable(1.3), s);
    const auto b = apply_levy_generator(f, LevyMeasure::stable(1.3), p);
    CHECK(a.values == b.values);
}

TEST_CASE("jump measure densities") {
    CHECK(levy_measure_density(LevyMeasure::stable(1.0), 2.0) == doctest::Approx(1.0 / (4 * pi)).epsilon(1e-14));
    CHECK(levy_measure_density(LevyMeasure::relativistic(1.0), 1.0) ==
          doctest::Approx(std::cyl_bessel_k(1.0, 1.0) / pi).epsilon(1e-13));
    for (double y : {0.3, 2.5}) {
        CHECK(levy_measure_density(LevyMeasure::stable(0.7), -y) == levy_measure_density(LevyMeasure::stable(0.7), y));
        CHECK(levy_measure_density(LevyMeasure::relativistic(2.0), -y) ==
              levy_measure_density(LevyMeasure::relativistic(2.0), y));
    }
    // 3D stable coefficient 2^mu Gamma((mu+3)/2) / (pi^{3/2} |Gamma(-mu/2)|).
    const double mu = 1.2;
    CHECK(levy_measure_density(LevyMeasure::stable(mu, 3), 1.0) ==
          doctest::Approx(std::pow(2, mu) * std::tgamma((mu + 3) / 2) / (std::pow(pi, 1.5) * std::abs(std::tgamma(-mu / 2))))
              .epsilon(1e-13));
    CHECK_THROWS_AS(levy_measure_density(LevyMeasure::stable(1.0), 0.0), DomainError);
}

TEST_CASE("relativistic symbol identity") {
    const auto nu = LevyMeasure::relativistic(1.0);
    boost::math::quadrature::exp_sinh<double> q;
    for (double p : {0.5, 2.0}) {
        const double exact = std::sqrt(1 + p * p) - 1;
        CHECK(std::abs(levy_symbol_quadrature(nu, p) - exact) < 1e-6);
        CHECK(std::abs(nu.symbol(p) - exact) < 1e-12);
        const double indep =
            2 * q.integrate([&](double y) { return y > 700 ? 0.0 : (1 - std::cos(p * y)) * std::cyl_bessel_k(1.0, y) / (pi * y); });
        CHECK(std::abs(indep - exact) < 1e-7);
    }
}

TEST_CASE("reflection compensation constant") {
    for (double mu : {0.3, 0.5, 1.5, 1.9}) {
        const double v = 2 * specfun::gamma(1 + mu) * specfun::gamma(-mu) * std::sin(pi * mu / 2) * std::cos(pi * mu / 2) / pi;
        CHECK(std::abs(v + 1) <= 1e-12);
    }
}

TEST_CASE("dropping the counterterm diverges as the cutoff shrinks") {
    const Grid1D g(4096, 25.6);
    const auto rho = real_field(g, [&](double x) { return cauchy_periodic(x, 1.0, g.L()); });
    LevyOptions o;
    o.keep_counterterm = false;
    double prev = 0.0;
    for (int k : {8, 4, 2, 1}) {
        o.cutoff = k * g.dx();
        const double v = peak(apply_levy_generator(rho, LevyMeasure::stable(1.0), o));
        if (prev > 0.0) CHECK(v / prev >= 1.8);
        prev = v;
    }
}

TEST_CASE("jump integral argument checks") {
    const Grid1D g(256, 10.0);
    const auto f = real_field(g, [](double x) { return std::exp(-x * x); });
    LevyOptions o;
    o.cutoff = 11 * g.dx();
    CHECK_THROWS_AS(apply_levy_generator(f, LevyMeasure::stable(1.0), o), DomainError);
    o.cutoff = -1.0;
    CHECK_THROWS_AS(apply_levy_generator(f, LevyMeasure::stable(1.0), o), DomainError);
    CHECK_THROWS_AS(LevyMeasure::stable(2.0), DomainError);
    CHECK_THROWS_AS(LevyMeasure::stable(-0.1), DomainError);
}

TEST_CASE("inverse gradient") {
    const Grid1D g(2048, 40.0);
    const double lam = 1.0;
    const auto dr = real_field(g, [&](double x) { return cauchy_periodic_dlam(x, lam, g.L()); });
    // d_t rho = -d_x j, so the antiderivative of d_t rho is -j.
    CHECK(linf(inverse_gradient(dr), [&](double x) { return -cauchy_periodic_current(x, lam, g.L()); }) < 1e-10);

    const double k = 5 * pi / g.L();
    CHECK(linf(inverse_gradient(real_field(g, [&](double x) { return std::cos(k * x); })),
               [&](double x) { return std::sin(k * x) / k; }) < 1e-12);

    const auto f = real_field(g, [](double x) { return std::exp(-x * x) * (1 + x); });
    const auto df = WaveField(g, derivative(g, f.values, 1));
    double mean = 0.0;
    for (const auto& v : f.values) mean += v.real() / g.n();
    const auto back = inverse_gradient(df);
    for (std::size_t j = 0; j < g.n(); ++j) CHECK(std::abs(back.values[j] - (f.values[j] - mean)) < 1e-10);

    CHECK_THROWS_AS(inverse_gradient(real_field(g, [](double x) { return std::exp(-x * x); })), DomainError);
}

TEST_CASE("fractional powers") {
    const Grid1D g(2048, 40.0);
    const auto f = real_field(g, [](double x) { return x * std::exp(-x * x); });
    const auto r = fractional_power(fractional_power(f, 0.25), -0.25);
    CHECK(linf(r, [](double x) { return x * std::exp(-x * x); }) < 1e-10);

    const double k = 7 * pi / g.L();
    CHECK(linf(fractional_power(real_field(g, [&](double x) { return std::sin(k * x); }), 1.0),
               [&](double x) { return k * k * std::sin(k * x); }) < 1e-10);

    const auto rho = real_field(g, [&](double x) { return cauchy_periodic(x, 1.0, g.L()); });
    CHECK(linf(fractional_power(rho, 0.5), [&](double x) { return -cauchy_periodic_dlam(x, 1.0, g.L()); }) < 1e-12);
    CHECK_THROWS_AS(fractional_power(rho, -0.25), DomainError);
}

TEST_CASE("fractional current") {
    const Grid1D g(2048, 40.0);
    const auto rho = real_field(g, [&](double x) { return cauchy_periodic(x, 1.0, g.L()); });
    CHECK(linf(grad_inv_fractional(rho, 1.0), [&](double x) { return cauchy_periodic_current(x, 1.0, g.L()); }) < 1e-12);

    const auto rho0 = real_field(g, [](double x) { return std::exp(-x * x) / std::sqrt(pi); });
    const auto F = MultiplierSymbol::stable(1.5);
    const double t = 0.5, h = 1e-3;
    const auto rt = evolve_dissipative(rho0, F, t);
    const auto rp = evolve_dissipative(rho0, F, t + h), rm = evolve_dissipative(rho0, F, t - h);
    const auto j = grad_inv_fractional(rt, 1.5);
    const CVec dj = derivative(g, j.values, 1);
    double gap = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i)
        gap = std::max(gap, std::abs((rp.values[i] - rm.values[i]) / (2 * h) + dj[i]));
    CHECK(gap < 1e-5);

    CHECK_THROWS_AS(grad_inv_fractional(rho, 0.5), UnsupportedRegime);
    CHECK_THROWS_AS(grad_inv_fractional(rho, 2.0), DomainError);
}

TEST_CASE("ground-state potentials") {
    const Grid1D g(1024, 20.0);
    const auto s = real_field(g, [](double x) { return std::pow(pi, -0.25) * std::exp(-x * x / 2); });
    const RVec V = ground_state_potential(s, MultiplierSymbol::gaussian(1.0), 1.0);
    for (std::size_t j = 0; j < g.n(); ++j)
        if (std::abs(g.x(j)) < 4) CHECK(std::abs(V[j] - (g.x(j) * g.x(j) - 1)) < 1e-8);
    const auto Hs = apply_hamiltonian(s, MultiplierSymbol::gaussian(1.0), 1.0, V);
    CHECK(peak(Hs) < 1e-10);

    const Grid1D gl(1 << 14, 400.0);
    const auto sl = real_field(gl, [](double x) { return std::sqrt(2 / pi) / (1 + x * x); });
    const RVec Vl = ground_state_potential(sl, MultiplierSymbol::stable(1.0), 1.0);
    double gap = 0.0;
    for (std::size_t j = 0; j < gl.n(); ++j)
        if (std::abs(gl.x(j)) < 10) {
            const double x = gl.x(j);
            gap = std::max(gap, std::abs(Vl[j] + (1 - x * x) / (1 + x * x)));
        }
    CHECK(gap < 1e-3);
    CHECK(peak(apply_hamiltonian(sl, MultiplierSymbol::stable(1.0), 1.0, Vl)) < 1e-10);

    const auto bad = real_field(g, [](double x) { return x; });
    CHECK_THROWS_AS(ground_state_potential(bad, MultiplierSymbol::stable(1.0), 1.0), DomainError);
}

TEST_CASE("drift to potential") {
    const Grid1D g(2048, 20.0);
    RVec b(g.n()), zero(g.n(), 0.0);
    for (std::size_t j = 0; j < g.n(); ++j) b[j] = -g.x(j);
    // 2 m D^2 = 1 with D = 1/2.
    const RVec V = drift_to_potential(g, b, 2.0, 0.5);
    for (std::size_t j = 0; j < g.n(); ++j) CHECK(std::abs(V[j] - (g.x(j) * g.x(j) - 1)) < 1e-9);
    for (double v : drift_to_potential(g, zero, 1.0, 1.0)) CHECK(v == 0.0);

    RVec rho(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) rho[j] = std::exp(-g.x(j) * g.x(j)) / std::sqrt(pi);
    const auto drift = stationary_drift(g, rho, 0.5);
    for (std::size_t j = 0; j < g.n(); ++j) {
        CHECK(drift.b[j] == doctest::Approx(drift.u[j] + drift.v[j]));
        if (std::abs(g.x(j)) < 3) CHECK(std::abs(drift.b[j] + g.x(j)) < 1e-9);
    }
    // D d_x ln rho* = -x in closed form; the grid quotient is unreliable where rho* underflows.
    const RVec V2 = drift_to_potential(g, b, 2.0, 0.5);
    const auto s = real_field(g, [](double x) { return std::pow(pi, -0.25) * std::exp(-x * x / 2); });
    const RVec V3 = ground_state_potential(s, MultiplierSymbol::gaussian(0.5), 2.0);
    for (std::size_t j = 0; j < g.n(); ++j)
        if (std::abs(g.x(j)) < 3) CHECK(std::abs(V2[j] - V3[j]) < 1e-8);
}

TEST_CASE("Fokker-Planck and Hamiltonian conjugation") {
    // rho* = e^{-x^2} / sqrt(pi), D = 1/2, b = -x, m = 2 (2 m D^2 = 1).
    const Grid1D g(1024, 20.0);
    const double D = 0.5, m = 2.0;
    RVec rho(g.n()), sq(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        rho[j] = std::exp(-g.x(j) * g.x(j)) / std::sqrt(pi);
        sq[j] = std::sqrt(rho[j]);
    }
    const auto drift = stationary_drift(g, rho, D);
    RVec b(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        b[j] = -g.x(j);
        if (std::abs(g.x(j)) < 3) CHECK(std::abs(drift.b[j] - b[j]) < 1e-9);
    }
    RVec V = drift_to_potential(g, b, m, D);
    for (auto& v : V) v /= 2 * m * D;
    const auto gfun = real_field(g, [](double x) { return std::exp(-(x - 1) * (x - 1)) * (2 + std::sin(x)); });
    RVec prod(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) prod[j] = sq[j] * gfun.values[j].real();
    const RVec lfp = fokker_planck(g, prod, b, D);
    const auto Hg = apply_hamiltonian(gfun, MultiplierSymbol::gaussian(D), 1.0, V);
    double gap7 = 0.0, gap8 = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        if (std::abs(g.x(j)) > 4) continue;
        gap7 = std::max(gap7, std::abs(-lfp[j] / sq[j] - Hg.values[j].real()));
        gap8 = std::max(gap8, std::abs(-sq[j] * Hg.values[j].real() - lfp[j]));
    }
    CHECK(gap7 < 1e-8);
    CHECK(gap8 < 1e-8);
}

TEST_CASE("hermiticity and negativity") {
    const Grid1D g(1024, 20.0);
    const auto a = WaveField::from_function(g, [](double x) { return std::exp(-x * x + cplx(0, x)); });
    const auto b = WaveField::from_function(g, [](double x) { return std::exp(-(x - 1) * (x - 1) / 2) * cplx(1, x); });
    const MultiplierSymbol syms[] = {MultiplierSymbol::gaussian(1.0), MultiplierSymbol::stable(0.5),
                                     MultiplierSymbol::stable(1.5), MultiplierSymbol::salpeter(1.0)};
    for (const auto& F : syms) {
        const cplx l = inner(a, apply_symbol(b, F)), r = inner(apply_symbol(a, F), b);
        CHECK(std::abs(l - r) <= 1e-10 * a.norm() * b.norm());
        const auto f = real_field(g, [](double x) { return std::exp(-x * x) * std::cos(2 * x) + 0.3 * std::exp(-x * x / 4); });
        CHECK(-inner(f, apply_symbol(f, F)).real() <= 0.0);
    }
}

TEST_CASE("mean-energy normalization") {
    const Grid1D g(4096, 100.0);
    auto phi = WaveField::from_function(g, [](double x) { return std::exp(-x * x / 2); });
    const double n0 = phi.norm();
    for (auto& v : phi.values) v /= n0;
    const auto F = MultiplierSymbol::salpeter(1.0);
    const auto res = mean_energy_normalize(phi, F);
    CHECK(res.Phi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto back = mean_energy_restore(res.Phi, F, res.E);
    double gap = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) gap = std::max(gap, std::abs(back.values[j] - phi.values[j]));
    CHECK(gap <= 1e-10);

    const Grid1D gw(1 << 15, 800.0);
    auto pk = WaveField::from_function(gw, [](double x) { return std::exp(-0.0025 * x * x + cplx(0, 3 * x)); });
    const double n1 = pk.norm();
    for (auto& v : pk.values) v /= n1;
    CHECK(mean_energy_normalize(pk, MultiplierSymbol::salpeter(2.0)).E == doctest::Approx(std::sqrt(13.0)).epsilon(1e-4));

    CHECK_THROWS_AS(mean_energy_normalize(phi, MultiplierSymbol::stable(1.0)), DomainError);
}
