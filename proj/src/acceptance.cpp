#include "nonlocal/acceptance.hpp"

#include "nonlocal/currents.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/evolution.hpp"
#include "nonlocal/generators.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/propagators.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;

struct Report {
    bool pass = true;
    std::ostringstream os;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            os << "FAILED " << what << "; ";
        }
    }
    template <class T>
    Report& operator<<(const T& v) {
        os << v;
        return *this;
    }
};

std::string sci(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

// L-infinity of |a|^2 - |b(x)|^2 on |x| <= xmax.
double density_gap(const WaveField& a, const std::function<cplx(double)>& b, double xmax) {
    double e = 0.0;
    for (std::size_t j = 0; j < a.grid.n(); ++j) {
        const double x = a.grid.x(j);
        if (std::abs(x) <= xmax) e = std::max(e, std::abs(std::norm(a.values[j]) - std::norm(b(x))));
    }
    return e;
}

double field_gap(const WaveField& a, const WaveField& b, double xmax) {
    double e = 0.0;
    for (std::size_t j = 0; j < a.grid.n(); ++j)
        if (std::abs(a.grid.x(j)) <= xmax) e = std::max(e, std::abs(a.values[j] - b.values[j]));
    return e;
}

// Reference grid for heavy-tailed 1D packets: the algebraic tails make the
// periodic images the dominant error, so the box is wide.
Grid1D reference_grid() { return Grid1D(std::size_t(1) << 19, 25600.0); }

CriterionResult c1_lorentz() {
    Report r;
    const auto init = InitialData::parse("quad_lorentz:1");
    const auto g = reference_grid();
    const auto psi0 = make_initial(init, g);
    const auto F = MultiplierSymbol::stable(1.0);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0, worst0 = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const auto psi = evolve_unitary(psi0, F, t);
        worst = std::max(worst, density_gap(psi, [&](double x) { return oracle_solution(init, x, t); }, 20.0));
        const double rho0 = std::norm(psi.values[g.n() / 2]);
        worst0 = std::max(worst0, std::abs(rho0 - (2.0 / pi) / (1.0 + t * t)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.check(worst <= 1e-6, "L-inf |psi|^2");
    r.check(worst0 <= 1e-8, "rho(0,t)");
    r.check(secs < 5.0, "runtime");
    r << "Linf(rho)=" << sci(worst) << " (<=1e-6), |rho(0,t)-(2/pi)/(1+t^2)|=" << sci(worst0)
      << " (<=1e-8), evolution time " << sci(secs) << " s";
    return {1, "Lorentz-packet oracle", r.pass, r.os.str(), 0.0};
}

CriterionResult c2_gaussian() {
    Report r;
    const auto init = InitialData::parse("gaussian:1");
    const auto g = reference_grid();
    const auto psi0 = make_initial(init, g);
    const auto F = MultiplierSymbol::stable(1.0);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double t : {1.0, 2.0, 4.0}) {
        const auto psi = evolve_unitary(psi0, F, t);
        worst = std::max(worst, density_gap(psi, [&](double x) { return oracle_solution(init, x, t); }, 20.0));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.check(worst <= 1e-6, "L-inf |psi|^2");
    r.check(secs < 5.0, "runtime");
    r << "Linf(rho)=" << sci(worst) << " (<=1e-6), evolution time " << sci(secs) << " s";
    return {2, "Gaussian-packet oracle", r.pass, r.os.str(), 0.0};
}

CriterionResult c3_bimodality() {
    Report r;
    const double gamma = 1.0;
    const auto before = pdf_modes(gamma, gamma * (1.0 - 1e-9));
    const auto at = pdf_modes(gamma, gamma);
    const auto after = pdf_modes(gamma, gamma * (1.0 + 1e-9));
    r.check(before.size() == 1 && at.size() == 1 && after.size() == 3, "transition at t = gamma");
    const auto init = InitialData::parse("quad_lorentz:1");
    const Grid1D g(std::size_t(1) << 16, 800.0);
    const auto psi0 = make_initial(init, g);
    double worst_cells = 0.0;
    for (double t : {1.5, 2.0, 3.0}) {
        const auto rho = evolve_unitary(psi0, MultiplierSymbol::stable(1.0), t).density();
        const double expect = std::sqrt(t * t - gamma * gamma);
        // argmax on each half-line
        std::size_t jl = 0, jr = g.n() / 2;
        for (std::size_t j = 0; j < g.n() / 2; ++j)
            if (rho[j] > rho[jl]) jl = j;
        for (std::size_t j = g.n() / 2; j < g.n(); ++j)
            if (rho[j] > rho[jr]) jr = j;
        const auto modes = pdf_modes(gamma, t);
        r.check(modes.size() == 3 && std::abs(modes[2].x - expect) < 1e-14, "pdf_modes roots");
        worst_cells = std::max({worst_cells, std::abs(g.x(jr) - expect) / g.dx(), std::abs(g.x(jl) + expect) / g.dx()});
    }
    r.check(worst_cells <= 1.0, "argmax within one cell");
    r << "modes 1 -> 1 -> 3 across t = gamma; engine argmax offset " << sci(worst_cells) << " cells (<=1)";
    return {3, "bimodality onset", r.pass, r.os.str(), 0.0};
}

CriterionResult c4_radial() {
    Report r;
    const auto init = InitialData::parse("radial3d:1");
    const RadialGrid3D g(std::size_t(1) << 16, 4000.0);
    const auto psi0 = make_initial(init, g);
    double worst = 0.0, worst_speed = 0.0;
    for (double t : {5.0, 6.0, 7.0, 8.0, 9.0, 10.0}) {
        const auto psi = evolve_unitary(psi0, MultiplierSymbol::stable(1.0), t);
        std::size_t best = 0;
        double best_v = -1.0;
        for (std::size_t i = 0; i < g.nodes(); ++i) {
            const double rr = g.r(i);
            const double rho = std::norm(psi.psi(i));
            if (rr <= 30.0) worst = std::max(worst, std::abs(rho - std::norm(oracle_solution(init, rr, t))));
            const double v = std::norm(psi.u[i]);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        worst_speed = std::max(worst_speed, std::abs(g.r(best) / t - 1.0));
    }
    r.check(worst <= 1e-5, "L-inf pdf");
    r.check(worst_speed <= 0.05, "front speed");
    r << "Linf(rho)=" << sci(worst) << " (<=1e-5), max |r*/t-1|=" << sci(worst_speed) << " (<=0.05)";
    return {4, "3D radial expansion", r.pass, r.os.str(), 0.0};
}

CriterionResult c5_routes() {
    Report r;
    const Grid1D g(4096, 25.6);
    const std::vector<WaveField> fields = {
        WaveField::from_function(g, [](double x) { return cplx(std::exp(-0.5 * x * x)); }),
        WaveField::from_function(g, [](double x) { return cplx(1.0 / (1.0 + x * x)); }),
    };
    std::vector<MultiplierSymbol> symbols = {MultiplierSymbol::stable(0.5), MultiplierSymbol::stable(1.0),
                                             MultiplierSymbol::stable(1.5), MultiplierSymbol::salpeter(0.0),
                                             MultiplierSymbol::salpeter(1.0)};
    double worst = 0.0;
    for (const auto& F : symbols) {
        const auto nu = LevyMeasure::matching(F);
        for (const auto& f : fields) {
            const auto a = apply_symbol(f, F);
            const auto b = apply_levy_generator(f, nu);
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < g.n(); ++j) {
                if (std::abs(g.x(j)) > 10.0) continue;
                num = std::max(num, std::abs(a.values[j] + b.values[j]));
                den = std::max(den, std::abs(a.values[j]));
            }
            worst = std::max(worst, num / den);
        }
    }
    double identity = 0.0;
    const auto rel = LevyMeasure::relativistic(1.0);
    for (double p : {0.5, 2.0})
        identity = std::max(identity, std::abs(levy_symbol_quadrature(rel, p) - (std::sqrt(1.0 + p * p) - 1.0)));
    r.check(worst <= 1e-4, "route agreement");
    r.check(identity <= 1e-6, "relativistic symbol identity");
    r << "max relative Linf=" << sci(worst) << " (<=1e-4), K1 symbol identity error " << sci(identity) << " (<=1e-6)";
    return {5, "operator route agreement", r.pass, r.os.str(), 0.0};
}

CriterionResult c6_reflection() {
    Report r;
    double worst = 0.0;
    for (double mu : {0.3, 0.5, 1.5, 1.9}) {
        const double v = 2.0 * specfun::gamma(1.0 + mu) * specfun::gamma(-mu) * std::sin(pi * mu / 2.0) *
                         std::cos(pi * mu / 2.0) / pi;
        worst = std::max(worst, std::abs(v + 1.0));
    }
    r.check(worst <= 1e-12, "reflection constant");
    r << "max |constant + 1|=" << sci(worst) << " (<=1e-12)";
    return {6, "reflection-compensation constant", r.pass, r.os.str(), 0.0};
}

CriterionResult c7_regularized() {
    Report r;
    const auto init = InitialData::parse("quad_lorentz:1");
    const Grid1D g(std::size_t(1) << 21, 100.0);
    const auto psi0 = make_initial(init, g);
    const double t = 1.0;
    const auto exact = evolve_unitary(psi0, MultiplierSymbol::stable(1.0), t);
    const auto fam = PropagatorFamily::cauchy(1.0, 1);
    std::vector<double> gaps;
    for (double eps : {0.1, 0.05, 0.025, 1e-3})
        gaps.push_back(field_gap(propagate_with_kernel(psi0, fam, t, {eps}), exact, 20.0));
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] < gaps[i - 1];
    r.check(decreasing, "gap decreasing");
    r.check(gaps.back() <= 1e-4, "final gap <= 1e-4");

    // The principal-value kernel keeps only -i sin(|p| t), i.e. i Im psi for real even data.
    const Grid1D h(std::size_t(1) << 19, 25600.0);
    const auto q0 = make_initial(init, h);
    const auto naive = naive_cauchy_propagate(q0, t);
    double imag_gap = 0.0, full_gap = 0.0;
    for (std::size_t j = 0; j < h.n(); ++j) {
        const double x = h.x(j);
        if (std::abs(x) > 20.0) continue;
        const cplx o = oracle_solution(init, x, t);
        imag_gap = std::max(imag_gap, std::abs(naive.values[j] - cplx(0.0, o.imag())));
        full_gap = std::max(full_gap, std::abs(naive.values[j] - o));
    }
    r.check(imag_gap <= 1e-6, "naive kernel gives the imaginary part");
    r.check(full_gap >= 1e-2, "naive kernel residual");
    r << "gaps over eps {0.1,0.05,0.025,1e-3}: ";
    for (double v : gaps) r << sci(v) << " ";
    r << "(final <=1e-4 required; the eps-kernel evolves to t - i eps, an O(eps) shift); naive: imag-part gap "
      << sci(imag_gap) << ", residual " << sci(full_gap) << " (>=1e-2)";
    return {7, "regularized-propagator convergence", r.pass, r.os.str(), 0.0};
}

// Bergstrom tail of a unit-mass symmetric stable density with exponent a |p|^mu:
// mass beyond radius X (1D: both sides, 3D: shell integral).
double stable_tail_mass(double mu, double a, int dim, double X) {
    double s = 0.0;
    for (int n = 1; n <= 40; ++n) {
        const double nm = n * mu;
        const double lg = std::lgamma(nm + (dim == 1 ? 1.0 : 2.0)) - std::lgamma(n + 1.0);
        const double bound = std::exp(lg + n * std::log(a) - nm * std::log(X)) / nm;
        s += (n % 2 == 1 ? 1.0 : -1.0) * bound * std::sin(pi * nm / 2.0);
        if (bound < 1e-18) break;
    }
    return 2.0 / pi * s;
}

double kernel_mass(const KernelFamily& fam, double t) {
    const double X = 2048.0;
    auto w = [&](double x) {
        const double k = semigroup_kernel(fam, x, t);
        return fam.dim == 1 ? 2.0 * k : 4.0 * pi * x * x * k;
    };
    double m = quad::gauss_graded(w, 1.0, 14, 4);
    for (double a = 1.0; a < X; a *= 2.0) m += quad::gauss_panels(w, a, 2.0 * a, 6);
    using Tag = KernelFamily::Tag;
    if (fam.tag == Tag::stable) m += stable_tail_mass(fam.mu, fam.gamma * t, fam.dim, X);
    if (fam.tag == Tag::cauchy || (fam.tag == Tag::relativistic && fam.m == 0.0))
        m += stable_tail_mass(1.0, fam.c * t, fam.dim, X);
    return m;
}

CriterionResult c8_kernels() {
    Report r;
    const std::vector<KernelFamily> fams = {
        KernelFamily::heat(1.0),          KernelFamily::heat(1.0, 3),        KernelFamily::stable(0.5),
        KernelFamily::stable(1.0),        KernelFamily::stable(1.5),         KernelFamily::stable(1.5, 1.0, 3),
        KernelFamily::cauchy(1.0),        KernelFamily::cauchy(1.0, 3),      KernelFamily::relativistic(1.0),
        KernelFamily::relativistic(1.0, 1.0, 3)};
    double norm_err = 0.0;
    for (const auto& f : fams)
        for (double t : {0.1, 1.0, 5.0}) norm_err = std::max(norm_err, std::abs(kernel_mass(f, t) - 1.0));
    r.check(norm_err <= 1e-8, "normalization");

    const auto cau = KernelFamily::cauchy(1.0);
    double ck = 0.0;
    const double s = 0.7, t = 1.1;
    for (double x : {0.0, 1.3, 5.0}) {
        auto f = [&](double th) {
            const double y = std::tan(th);
            return semigroup_kernel(cau, x - y, s) * semigroup_kernel(cau, y, t) * (1.0 + y * y);
        };
        const double v = quad::gauss_panels(f, -0.5 * pi, 0.5 * pi, 200);
        ck = std::max(ck, std::abs(v - semigroup_kernel(cau, x, s + t)));
    }
    r.check(ck <= 1e-8, "Chapman-Kolmogorov");

    std::vector<double> sup;
    for (double m : {1.0, 0.1, 0.01}) {
        double e = 0.0;
        for (double x = -10.0; x <= 10.0; x += 0.05)
            e = std::max(e, std::abs(semigroup_kernel(KernelFamily::relativistic(m), x, 1.0) -
                                     semigroup_kernel(KernelFamily::cauchy(1.0), x, 1.0)));
        sup.push_back(e);
    }
    r.check(sup[1] < sup[0] && sup[2] < sup[1], "k_m -> k_0 monotone");

    const auto rel = KernelFamily::relativistic(1.0);
    const auto nu = LevyMeasure::relativistic(1.0);
    std::vector<double> lim;
    for (double tt : {1e-2, 1e-3}) {
        double e = 0.0;
        for (double y : {0.5, 1.0, 2.0})
            e = std::max(e, std::abs(semigroup_kernel(rel, y, tt) / tt / levy_measure_density(nu, y) - 1.0));
        lim.push_back(e);
    }
    r.check(lim[1] < lim[0], "t^-1 k_m -> nu_m");
    r << "normalization " << sci(norm_err) << " (<=1e-8), CK " << sci(ck) << " (<=1e-8), sup|k_m-k_0| " << sci(sup[0])
      << " > " << sci(sup[1]) << " > " << sci(sup[2]) << ", Levy limit rel err " << sci(lim[0]) << " > "
      << sci(lim[1]);
    return {8, "kernel suite", r.pass, r.os.str(), 0.0};
}

CriterionResult c9_currents() {
    Report r;
    // Continuity for both families on a resolved, fast-decaying state.
    const Grid1D g(4096, 100.0);
    const auto init = InitialData::parse("gaussian:1");
    const auto psi0 = make_initial(init, g);
    double cont = 0.0;
    for (const auto& fam : {PropagatorFamily::cauchy(1.0, 1), PropagatorFamily::salpeter(1.0, 1.0, 1)}) {
        const auto F = fam.tag == PropagatorFamily::Tag::cauchy_1d ? MultiplierSymbol::stable(1.0)
                                                                    : MultiplierSymbol::salpeter(fam.m, fam.c);
        for (double t : {0.5, 2.0}) {
            const auto psi = evolve_unitary(psi0, F, t);
            const auto j = quantum_current_field(psi, fam);
            const auto rate = density_rate(psi, F);
            const CVec dj = derivative(g, CVec(j.begin(), j.end()), 1);
            for (std::size_t i = 0; i < g.n(); ++i) cont = std::max(cont, std::abs(rate[i] + dj[i].real()));
        }
    }
    r.check(cont <= 1e-5, "continuity residual");

    // Gaussian scenario against the angular closed form.
    const auto big = reference_grid();
    const auto q0 = make_initial(init, big);
    const auto fam = PropagatorFamily::cauchy(1.0, 1);
    const RVec xs = {-3.0, -1.5, -0.4, 0.0, 0.4, 1.5, 3.0};
    double closed = 0.0, odd = 0.0, zero = 0.0;
    for (double t : {0.0, 2.0}) {
        const auto psi = evolve_unitary(q0, MultiplierSymbol::stable(1.0), t);
        const auto js = quantum_current(psi, fam, xs, t);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            closed = std::max(closed, std::abs(js[i].j - gaussian_cauchy_current_closed(xs[i], t)));
            odd = std::max(odd, std::abs(js[i].j + js[xs.size() - 1 - i].j));
            if (t == 0.0) zero = std::max(zero, std::abs(js[i].j));
        }
    }
    r.check(closed <= 1e-6, "closed-form agreement");
    r.check(odd <= 1e-10, "oddness");
    r.check(zero <= 1e-10, "j(x,0) = 0");

    // Outward migration of the positive peak.
    std::vector<double> peaks;
    for (double t = 1.0; t <= 5.0 + 1e-12; t += 0.5) {
        double best = -1.0, bx = 0.0;
        for (double x = 0.0; x <= 12.0; x += 0.005) {
            const double j = gaussian_cauchy_current_closed(x, t);
            if (j > best) {
                best = j;
                bx = x;
            }
        }
        peaks.push_back(bx);
    }
    bool outward = true;
    for (std::size_t i = 1; i < peaks.size(); ++i) outward = outward && peaks[i] > peaks[i - 1];
    r.check(outward, "outward peak migration");
    r << "continuity " << sci(cont) << " (<=1e-5), closed form " << sci(closed) << " (<=1e-6), oddness " << sci(odd)
      << ", j(.,0) " << sci(zero) << ", peak x(t=1)=" << peaks.front() << " -> x(t=5)=" << peaks.back();
    return {9, "current suite", r.pass, r.os.str(), 0.0};
}

CriterionResult c10_nonexistence() {
    Report r;
    const Grid1D g(4096, 40.0);
    auto psi = WaveField::from_function(g, [](double x) { return std::exp(cplx(-0.5 * x * x, 3.0 * x)); });
    const double nrm = psi.norm();
    for (auto& z : psi.values) z /= nrm;
    const auto base = continuity_residual(psi, 1.0, CurrentRule::sgn_spectral);
    const auto cand = continuity_residual(psi, 1.5, CurrentRule::laskin_candidate);
    double bracket = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i)
        bracket = std::max(bracket, std::abs(cand.residual[i] - cand.first_bracket[i]));
    const double ident = fractional_identity_gap(psi, 1.5);
    r.check(cand.linf >= 10.0 * base.linf, "candidate residual >= 10x baseline");
    r.check(ident <= 1e-10, "operator identity");
    r << "mu=1.5 candidate residual " << sci(cand.linf) << " vs mu=1 exact-current baseline " << sci(base.linf)
      << ", residual - first bracket " << sci(bracket) << ", identity gap " << sci(ident) << " (<=1e-10)";
    return {10, "fractional continuity non-existence", r.pass, r.os.str(), 0.0};
}

CriterionResult c11_confining() {
    Report r;
    const Grid1D g(512, 20.0);
    const double mu = 1.0, lambda = 1.0;
    RVec rho_star(g.n()), s(g.n()), Phi(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.x(j);
        rho_star[j] = 2.0 / (pi * (1.0 + x * x) * (1.0 + x * x)); // quadratic Cauchy
        s[j] = std::sqrt(rho_star[j]);
        Phi[j] = std::log(s[j]);
    }
    const RVec fixed = confining_rhs(g, rho_star, s, mu, lambda);
    double fp = 0.0;
    for (double v : fixed) fp = std::max(fp, std::abs(v));
    r.check(fp <= 1e-8, "fixed point");

    RVec rho(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) rho[j] = rho_star[j] * (1.0 + 0.1 * std::cos(g.x(j)));
    double eq = 0.0;
    {
        const RVec a = confining_rhs(g, rho, s, mu, lambda);
        const RVec b = confining_rhs_phi(g, rho, Phi, mu, lambda);
        for (std::size_t j = 0; j < g.n(); ++j) eq = std::max(eq, std::abs(a[j] - b[j]));
    }
    r.check(eq <= 1e-10, "exponential-weight form");

    auto l1 = [&](const RVec& v) {
        double d = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j) d += std::abs(v[j] - rho_star[j]);
        return d * g.dx();
    };
    const double dt = 0.01;
    std::vector<double> dist = {l1(rho)};
    for (int k = 0; k < 50; ++k) {
        rho = confining_step(g, rho, s, mu, lambda, dt);
        dist.push_back(l1(rho));
    }
    bool mono = true;
    for (std::size_t i = 1; i < dist.size(); ++i) mono = mono && dist[i] < dist[i - 1];
    r.check(mono, "monotone L1 relaxation");
    r << "fixed-point residual " << sci(fp) << " (<=1e-8), L1 distance " << sci(dist.front()) << " -> "
      << sci(dist.back()) << " over 50 steps, exponential-weight form gap " << sci(eq) << " (<=1e-10)";
    return {11, "confining transport", r.pass, r.os.str(), 0.0};
}

CriterionResult c12_unitarity() {
    Report r;
    const Grid1D g(4096, 50.0);
    const auto psi = WaveField::from_function(g, [](double x) { return std::exp(cplx(-0.5 * x * x, 2.0 * x)); });
    const double n0 = psi.norm();
    const std::vector<MultiplierSymbol> syms = {MultiplierSymbol::gaussian(1.0), MultiplierSymbol::stable(0.5),
                                                MultiplierSymbol::stable(1.0), MultiplierSymbol::stable(1.5),
                                                MultiplierSymbol::salpeter(1.0)};
    double drift = 0.0, comp_field = 0.0, comp_mult = 0.0;
    for (const auto& F : syms) {
        for (double t : {0.1, 1.0, 10.0}) drift = std::max(drift, std::abs(evolve_unitary(psi, F, t).norm() - n0));
        const auto a = evolve_unitary(evolve_unitary(psi, F, 0.7), F, 1.3);
        const auto b = evolve_unitary(psi, F, 2.0);
        for (std::size_t j = 0; j < g.n(); ++j) comp_field = std::max(comp_field, std::abs(a.values[j] - b.values[j]));
        for (std::size_t k = 0; k < g.n(); ++k) {
            const double p = g.p(k);
            const cplx m1 = semigroup_multiplier(F, p, cplx(0.0, 0.7)) * semigroup_multiplier(F, p, cplx(0.0, 1.3));
            comp_mult = std::max(comp_mult, std::abs(m1 - semigroup_multiplier(F, p, cplx(0.0, 2.0))));
        }
    }
    r.check(drift <= 1e-12, "norm drift");
    r.check(comp_mult <= 1e-12, "multiplier composition");
    r.check(comp_field <= 1e-12, "field composition");
    r << "norm drift " << sci(drift) << " (<=1e-12), multiplier composition " << sci(comp_mult)
      << ", field composition " << sci(comp_field) << " (<=1e-12)";
    return {12, "unitarity and composition", r.pass, r.os.str(), 0.0};
}

CriterionResult c13_energy() {
    Report r;
    const auto F = MultiplierSymbol::salpeter(2.0);
    const Grid1D g(4096, 400.0);
    auto packet = [&](double p0, double sigma) {
        // spectral width sigma: |psi~|^2 ~ exp(-(p - p0)^2 / 2 sigma^2)
        auto w = WaveField::from_function(g, [&](double x) {
            return std::exp(cplx(-sigma * sigma * x * x, p0 * x));
        });
        const double n = w.norm();
        for (auto& z : w.values) z /= n;
        return w;
    };
    const auto phi = packet(3.0, 0.05);
    const auto en = mean_energy_normalize(phi, F);
    const auto back = mean_energy_restore(en.Phi, F, en.E);
    double trip = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) trip = std::max(trip, std::abs(back.values[j] - phi.values[j]));
    const double target = std::sqrt(13.0);
    const double rel = std::abs(en.E - target) / target;
    r.check(trip <= 1e-10, "round trip");
    r.check(rel <= 0.01, "narrow-band energy");
    r << "round trip " << sci(trip) << " (<=1e-10), E=" << en.E << " vs sqrt(13)=" << target << " (rel " << sci(rel)
      << ", <=1%), |Phi|-1=" << sci(std::abs(en.Phi.norm() - 1.0));
    return {13, "energy normalization", r.pass, r.os.str(), 0.0};
}

} // namespace

CriterionResult run_criterion(int id) {
    using Fn = CriterionResult (*)();
    static const Fn table[] = {c1_lorentz,   c2_gaussian,     c3_bimodality,    c4_radial,  c5_routes,
                               c6_reflection, c7_regularized, c8_kernels,       c9_currents, c10_nonexistence,
                               c11_confining, c12_unitarity,  c13_energy};
    if (id < 1 || id > acceptance_count) throw DomainError("acceptance: no criterion " + std::to_string(id));
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
        res = table[id - 1]();
    } catch (const std::exception& e) {
        res.id = id;
        res.name = "criterion " + std::to_string(id);
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    if (ids.empty()) {
        for (int i = 1; i <= acceptance_count; ++i) out.push_back(run_criterion(i));
    } else {
        for (int i : ids) out.push_back(run_criterion(i));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << " [" << sci(r.seconds)
       << " s]";
    return os.str();
}

} // namespace nonlocal
