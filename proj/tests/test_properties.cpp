#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonlocal/currents.hpp"
#include "nonlocal/evolution.hpp"
#include "nonlocal/generators.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/propagators.hpp"
#include "nonlocal/specfun.hpp"

#include <cmath>
#include <random>

using namespace nonlocal;

namespace {

constexpr int trials = 20;

// Random smooth packet: a few Gaussians with random centres, widths and momenta.
WaveField random_packet(const Grid1D& g, std::mt19937_64& rng, bool real = false) {
    std::uniform_real_distribution<double> c(-4, 4), w(0.5, 1.5), k(-3, 3), a(-1, 1);
    struct Bump {
        double c, w, k;
        cplx a;
    };
    std::vector<Bump> bumps;
    for (int i = 0; i < 3; ++i) bumps.push_back({c(rng), w(rng), real ? 0.0 : k(rng), cplx(a(rng), real ? 0.0 : a(rng))});
    auto f = WaveField::from_function(g, [&](double x) {
        cplx s = 0.0;
        for (const auto& b : bumps) s += b.a * std::exp(cplx(-(x - b.c) * (x - b.c) / (2 * b.w * b.w), b.k * x));
        return s;
    });
    const double n = f.norm();
    for (auto& v : f.values) v /= n;
    return f;
}

MultiplierSymbol random_symbol(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mu(0.2, 2.0), m(0.0, 2.0), u(0, 1);
    const double pick = u(rng);
    if (pick < 0.4) return MultiplierSymbol::stable(mu(rng), 0.5 + u(rng));
    if (pick < 0.8) return MultiplierSymbol::salpeter(m(rng), 0.5 + u(rng));
    return MultiplierSymbol::gaussian(0.5 + u(rng));
}

} // namespace

TEST_CASE("generators are Hermitian and non-negative") {
    std::mt19937_64 rng(11);
    const Grid1D g(1024, 30.0);
    for (int i = 0; i < trials; ++i) {
        const auto F = random_symbol(rng);
        const auto f = random_packet(g, rng), h = random_packet(g, rng);
        const cplx lhs = inner(f, apply_symbol(h, F)), rhs = inner(apply_symbol(f, F), h);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
        const cplx e = inner(f, apply_symbol(f, F));
        CHECK(e.real() >= -1e-12);
        CHECK(std::abs(e.imag()) <= 1e-10 * (1 + e.real()));
    }
}

TEST_CASE("unitary evolution preserves the norm and inverts in time") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> t(-10, 10);
    const Grid1D g(1024, 30.0);
    for (int i = 0; i < trials; ++i) {
        const auto F = random_symbol(rng);
        const auto f = random_packet(g, rng);
        const double s = t(rng);
        const auto a = evolve_unitary(f, F, s);
        CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
        const auto back = evolve_unitary(a, F, -s);
        for (std::size_t j = 0; j < g.n(); ++j) CHECK(std::abs(back.values[j] - f.values[j]) <= 1e-12);
        const cplx e0 = inner(f, apply_symbol(f, F)), e1 = inner(a, apply_symbol(a, F));
        CHECK(std::abs(e1 - e0) <= 1e-10 * (1 + std::abs(e0)));
    }
}

TEST_CASE("dissipative semigroups preserve mass and positivity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> t(0.01, 3), mu(0.3, 2.0);
    const Grid1D g(2048, 60.0);
    for (int i = 0; i < trials; ++i) {
        auto f = random_packet(g, rng, true);
        for (auto& v : f.values) v = std::norm(v);
        double m0 = 0.0;
        for (const auto& v : f.values) m0 += v.real() * g.dx();
        const auto out = evolve_dissipative(f, MultiplierSymbol::stable(mu(rng)), t(rng));
        double m1 = 0.0, lo = 0.0;
        for (const auto& v : out.values) {
            m1 += v.real() * g.dx();
            lo = std::min(lo, v.real());
        }
        CHECK(m1 == doctest::Approx(m0).epsilon(1e-12));
        CHECK(lo >= -1e-10);
    }
}

TEST_CASE("stable kernels: symmetry, positivity and self-similarity") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> mu(0.3, 1.95), x(-8, 8), t(0.1, 5), ga(0.5, 2);
    for (int i = 0; i < trials; ++i) {
        const double m = mu(rng), xx = x(rng), tt = t(rng), gg = ga(rng);
        const auto f = KernelFamily::stable(m, gg);
        const double k = semigroup_kernel(f, xx, tt);
        CHECK(k > 0.0);
        CHECK(k == doctest::Approx(semigroup_kernel(f, -xx, tt)).epsilon(1e-12));
        const double s = std::pow(tt, -1.0 / m);
        CHECK(k == doctest::Approx(s * semigroup_kernel(f, xx * s, 1.0)).epsilon(1e-8));
        CHECK(semigroup_kernel(f, 0.0, tt) >= k);
    }
}

TEST_CASE("relativistic kernel sits below the massless one and decays in mass") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> m(0.05, 3), x(-6, 6), t(0.2, 4);
    for (int i = 0; i < trials; ++i) {
        const double mm = m(rng), xx = x(rng), tt = t(rng);
        const double km = semigroup_kernel(KernelFamily::relativistic(mm), xx, tt);
        const double k0 = semigroup_kernel(KernelFamily::cauchy(), xx, tt);
        CHECK(km > 0.0);
        // Subordination: k_m = e^{m t} E[e^{-m^2 S}] mixture of heat kernels, bounded by e^{m t} k_0.
        CHECK(km <= std::exp(mm * tt) * k0 * (1 + 1e-12));
    }
}

TEST_CASE("modified Bessel K ordering") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> z(0.01, 50);
    std::uniform_int_distribution<int> order(0, 3);
    for (int i = 0; i < trials; ++i) {
        const double n = 0.5 * order(rng), a = z(rng), b = a * 1.1;
        CHECK(specfun::bessel_k(n, b) < specfun::bessel_k(n, a));
        CHECK(specfun::bessel_k(n + 0.5, a) > specfun::bessel_k(n, a));
        // K_{n+1} - K_{n-1} = (2n / z) K_n
        if (n == 1) CHECK(specfun::bessel_k(n + 1, a) - specfun::bessel_k(n - 1, a) ==
                          doctest::Approx(2 * n / a * specfun::bessel_k(n, a)).epsilon(1e-12));
    }
}

TEST_CASE("real states carry no current") {
    std::mt19937_64 rng(17);
    const Grid1D g(1024, 30.0);
    for (int i = 0; i < 5; ++i) {
        const auto f = random_packet(g, rng, true);
        for (const auto& fam : {PropagatorFamily::cauchy(1.0, 1), PropagatorFamily::salpeter(0.7, 1.0, 1)})
            for (double j : quantum_current_field(f, fam)) CHECK(std::abs(j) <= 1e-12);
    }
}

TEST_CASE("currents flip under reflection") {
    std::mt19937_64 rng(18);
    const Grid1D g(1024, 30.0);
    for (int i = 0; i < 5; ++i) {
        const auto f = random_packet(g, rng);
        auto r = f;
        // x -> -x on the grid: node j maps to n - j (mod n).
        for (std::size_t j = 0; j < g.n(); ++j) r.values[j] = f.values[(g.n() - j) % g.n()];
        const auto fam = PropagatorFamily::salpeter(0.5, 1.0, 1);
        const auto a = quantum_current_field(f, fam), b = quantum_current_field(r, fam);
        for (std::size_t j = 0; j < g.n(); ++j) CHECK(std::abs(a[j] + b[(g.n() - j) % g.n()]) <= 1e-10);
    }
}

TEST_CASE("regularized propagators: gap to the real-time kernel shrinks with eps") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> x(-5, 5), t(0.3, 3);
    for (int i = 0; i < trials; ++i) {
        const double xx = x(rng), tt = t(rng);
        if (std::abs(std::abs(xx) - tt) < 0.2) continue;
        for (const auto& fam : {PropagatorFamily::cauchy(1.0, 1), PropagatorFamily::salpeter(0.5, 1.0, 1)}) {
            const cplx exact = quantum_propagator(fam, xx, tt, {1e-9});
            const double e1 = std::abs(quantum_propagator(fam, xx, tt, {1e-2}) - exact);
            const double e2 = std::abs(quantum_propagator(fam, xx, tt, {1e-3}) - exact);
            CHECK(e2 < e1);
            CHECK(e2 / e1 == doctest::Approx(0.1).epsilon(0.2));
        }
    }
}
