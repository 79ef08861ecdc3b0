#include "nonlocal/generators.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nonlocal {

namespace {

double max_abs(const CVec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

double zero_mode(const WaveField& f) {
    cplx s = 0.0;
    for (const auto& z : f.values) s += z;
    return std::abs(s) * f.grid.dx() / std::sqrt(2.0 * std::numbers::pi);
}

void require_zero_mode(const WaveField& f, const char* who) {
    const double z = zero_mode(f);
    if (z > 1e-10 * std::max(f.norm(), 1e-300)) {
        std::ostringstream os;
        os << who << ": zero mode must vanish (|f~(0)| = " << z << ")";
        throw DomainError(os.str());
    }
}

// Cubic product-integration weights for int_{delta}^{L} h(y) nu_per(y) dy on
// the nodes y_k = k dx, k = K..N/2.
RVec jump_weights(const Grid1D& g, const LevyMeasure& nu, std::size_t K) {
    using boost::math::quadrature::gauss;
    const auto& gx = gauss<double, 20>::abscissa();
    const auto& gw = gauss<double, 20>::weights();
    const std::size_t H = g.n() / 2;
    const double dx = g.dx(), P = 2.0 * g.L();
    RVec w(H + 1, 0.0);
    for (std::size_t k = K; k < H; ++k) {
        const std::size_t s = std::clamp<std::size_t>(k == 0 ? 0 : k - 1, K, H - 3);
        double ys[4];
        for (int i = 0; i < 4; ++i) ys[i] = static_cast<double>(s + i) * dx;
        const double c = (static_cast<double>(k) + 0.5) * dx, r = 0.5 * dx;
        auto accumulate = [&](double y, double weight) {
            const double v = weight * r * nu.periodized_density(y, P);
            for (int i = 0; i < 4; ++i) {
                double l = 1.0;
                for (int j = 0; j < 4; ++j)
                    if (j != i) l *= (y - ys[j]) / (ys[i] - ys[j]);
                w[s + i] += v * l;
            }
        };
        for (std::size_t i = 0; i < gx.size(); ++i) {
            accumulate(c - r * gx[i], gw[i]);
            accumulate(c + r * gx[i], gw[i]);
        }
    }
    return w;
}

} // namespace

cplx inner(const WaveField& a, const WaveField& b) {
    if (!(a.grid == b.grid)) throw DomainError("inner: grids differ");
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a.values[j]) * b.values[j];
    return s * a.grid.dx();
}

WaveField apply_symbol(const WaveField& psi, const MultiplierSymbol& F, Diagnostics* diag) {
    const auto& g = psi.grid;
    CVec a = psi.values;
    fft::forward(a);
    if (diag) {
        double edge = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (std::abs(g.p(k)) >= 0.95 * g.p_max()) edge = std::max(edge, std::abs(a[k]));
        const double peak = max_abs(a);
        diag->spectral_tail = peak > 0.0 ? edge / peak : 0.0;
        if (diag->spectral_tail >= 1e-12) {
            std::ostringstream os;
            os << "apply_symbol: spectrum not resolved (edge/peak = " << diag->spectral_tail << ")";
            diag->warn(os.str());
        }
    }
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= F(g.p(k));
    fft::inverse(a);
    return WaveField(g, std::move(a));
}

double levy_measure_density(const LevyMeasure& nu, double y) { return nu.density(y); }

WaveField apply_levy_generator(const WaveField& f, const LevyMeasure& nu, const LevyOptions& opt) {
    const auto& g = f.grid;
    if (nu.dim != 1) throw DomainError("apply_levy_generator: 1D grids only");
    if (nu.family == LevyMeasure::Family::stable && !(nu.mu > 0.0 && nu.mu < 2.0))
        throw DomainError("apply_levy_generator: mu must lie in (0,2)");
    const double dx = g.dx();
    double delta = opt.cutoff > 0.0 ? opt.cutoff : (nu.cutoff > 0.0 ? nu.cutoff : 4.0 * dx);
    if (opt.cutoff < 0.0 || nu.cutoff < 0.0) throw DomainError("apply_levy_generator: cutoff must be positive");
    if (delta > 10.0 * dx * (1.0 + 1e-12)) throw DomainError("apply_levy_generator: cutoff must not exceed 10 dx");
    const auto K = static_cast<std::size_t>(std::max(1.0, std::round(delta / dx)));
    delta = static_cast<double>(K) * dx;

    const std::size_t N = g.n(), H = N / 2;
    const RVec w = jump_weights(g, nu, K);
    double W = 0.0;
    for (double v : w) W += v;

    // Small jumps: f(x+y) + f(x-y) - 2 f(x) = y^2 f'' + y^4 f''''/12 + ...
    const double P = 2.0 * g.L();
    auto img2 = [&](double y) { return y * y * nu.image_density(y, P); };
    auto img4 = [&](double y) { return y * y * y * y * nu.image_density(y, P); };
    const double M2 = nu.inner_moment(2, delta) + quad::gauss_panels(img2, 0.0, delta, 2);
    const double M4 = (nu.inner_moment(4, delta) + quad::gauss_panels(img4, 0.0, delta, 2)) / 12.0;
    const CVec f2 = derivative(g, f.values, 2);
    const CVec f4 = derivative(g, f.values, 4);

    const CVec& v = f.values;
    CVec out(N);
    const double self = opt.keep_counterterm ? 2.0 * W : 0.0;
    auto row = [&](std::size_t j) {
        cplx s = 0.0;
        for (std::size_t k = K; k <= H; ++k) s += w[k] * (v[(j + k) % N] + v[(j + N - k) % N]);
        out[j] = s - self * v[j] + M2 * f2[j] + M4 * f4[j];
    };
    if (opt.exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t j = 0; j < N; ++j) row(j);
    } else {
        for (std::size_t j = 0; j < N; ++j) row(j);
    }
    return WaveField(g, std::move(out));
}

double levy_symbol_quadrature(const LevyMeasure& nu, double p) {
    if (nu.dim != 1) throw DomainError("levy_symbol_quadrature: 1D only");
    if (p == 0.0) return 0.0;
    p = std::abs(p);
    auto integrand = [&](double y) {
        if (y == 0.0) return 0.0;
        const double s = std::sin(0.5 * p * y);
        return 2.0 * s * s * nu.density(y);
    };
    const double y1 = std::min(1.0, 1.0 / p);
    const bool heavy = nu.family == LevyMeasure::Family::stable || nu.mass == 0.0;
    const double Y = heavy ? 4000.0 : y1 + 45.0 / nu.mass;
    const int panels = static_cast<int>(std::ceil((Y - y1) * (p + 1.0) / 2.0)) + 20;
    double I = quad::gauss_graded(integrand, y1, 40, 2) + quad::gauss_panels(integrand, y1, Y, panels);
    if (heavy) {
        // int_Y^inf (1 - cos py) C y^{-1-a} dy with the oscillatory part by parts.
        const double a = nu.family == LevyMeasure::Family::stable ? nu.mu : 1.0;
        const double C = nu.density(Y) * std::pow(Y, 1.0 + a);
        const double osc = -std::sin(p * Y) * std::pow(Y, -1.0 - a) / p -
                           (1.0 + a) * std::cos(p * Y) * std::pow(Y, -2.0 - a) / (p * p);
        I += C * (std::pow(Y, -a) / a - osc);
    }
    return 2.0 * I;
}

WaveField inverse_gradient(const WaveField& gf) {
    require_zero_mode(gf, "inverse_gradient");
    const auto& g = gf.grid;
    const std::size_t nyq = g.n() / 2;
    CVec a = gf.values;
    fft::forward(a);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k == 0 || k == nyq) {
            a[k] = 0.0;
            continue;
        }
        a[k] /= cplx(0.0, g.p(k));
    }
    fft::inverse(a);
    return WaveField(g, std::move(a));
}

WaveField fractional_power(const WaveField& f, double s) {
    if (s < 0.0) require_zero_mode(f, "fractional_power");
    const auto& g = f.grid;
    auto mult = [&](double p) -> cplx { return p == 0.0 ? 0.0 : std::pow(std::abs(p), 2.0 * s); };
    if (s == 0.0) return f;
    return WaveField(g, apply_multiplier(g, f.values, mult));
}

WaveField grad_inv_fractional(const WaveField& rho, double mu) {
    if (mu < 1.0)
        throw UnsupportedRegime("grad_inv_fractional: mu < 1 admits no current of gradient form");
    if (!(mu < 2.0)) throw DomainError("grad_inv_fractional: mu must lie in [1,2)");
    const auto& g = rho.grid;
    const std::size_t nyq = g.n() / 2;
    CVec a = rho.values;
    fft::forward(a);
    // j~ = |k|^mu rho~ / (i k) = -i sgn(k) |k|^{mu-1} rho~.
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double p = g.p(k);
        if (k == 0 || k == nyq) {
            a[k] = 0.0;
            continue;
        }
        a[k] *= cplx(0.0, -(p > 0 ? 1.0 : -1.0) * std::pow(std::abs(p), mu - 1.0));
    }
    fft::inverse(a);
    return WaveField(g, std::move(a));
}

RVec ground_state_potential(const WaveField& sqrt_rho, const MultiplierSymbol& F, double lambda) {
    const auto& v = sqrt_rho.values;
    for (const auto& z : v)
        if (!(z.real() > 0.0) || std::abs(z.imag()) > 1e-12 * z.real())
            throw DomainError("ground_state_potential: rho*^{1/2} must be real and strictly positive");
    const WaveField Fs = apply_symbol(sqrt_rho, F);
    RVec V(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) V[j] = -lambda * Fs.values[j].real() / v[j].real();
    return V;
}

WaveField apply_hamiltonian(const WaveField& psi, const MultiplierSymbol& F, double lambda, const RVec& V) {
    if (V.size() != psi.size()) throw DomainError("apply_hamiltonian: potential size mismatch");
    WaveField out = apply_symbol(psi, F);
    for (std::size_t j = 0; j < V.size(); ++j) out.values[j] = lambda * out.values[j] + V[j] * psi.values[j];
    return out;
}

RVec detrended_derivative(const Grid1D& g, const RVec& b) {
    if (b.size() != g.n()) throw DomainError("detrended_derivative: size mismatch");
    const std::size_t N = g.n();
    const double slope = (b[N - 1] - b[0]) / (g.x(N - 1) - g.x(0));
    CVec r(N);
    for (std::size_t j = 0; j < N; ++j) r[j] = b[j] - slope * g.x(j);
    const CVec d = derivative(g, r, 1);
    RVec out(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = d[j].real() + slope;
    return out;
}

RVec drift_to_potential(const Grid1D& g, const RVec& b, double m, double D) {
    if (!(m > 0.0) || !(D > 0.0)) throw DomainError("drift_to_potential: m and D must be positive");
    const RVec db = detrended_derivative(g, b);
    RVec V(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) V[j] = 2.0 * m * D * D * (b[j] * b[j] / (2.0 * D) + db[j]);
    return V;
}

DriftFields stationary_drift(const Grid1D& g, const RVec& rho_star, double D) {
    if (rho_star.size() != g.n()) throw DomainError("stationary_drift: size mismatch");
    CVec r(rho_star.begin(), rho_star.end());
    const CVec d = derivative(g, r, 1);
    DriftFields f;
    f.rho_star = rho_star;
    f.b.resize(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) {
        if (!(rho_star[j] > 0.0)) throw DomainError("stationary_drift: rho* must be strictly positive");
        f.b[j] = D * d[j].real() / rho_star[j];
    }
    f.u = f.b;
    f.v.assign(g.n(), 0.0);
    return f;
}

RVec fokker_planck(const Grid1D& g, const RVec& field, const RVec& b, double D) {
    const std::size_t N = g.n();
    CVec f(field.begin(), field.end()), bf(N);
    for (std::size_t j = 0; j < N; ++j) bf[j] = b[j] * field[j];
    const CVec f2 = derivative(g, f, 2), dbf = derivative(g, bf, 1);
    RVec out(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = D * f2[j].real() - dbf[j].real();
    return out;
}

namespace {

double positive_energy(const MultiplierSymbol& F, double p) {
    switch (F.kind) {
    case MultiplierSymbol::Kind::salpeter:
        return F.c * std::sqrt(p * p + F.m * F.m * F.c * F.c);
    case MultiplierSymbol::Kind::stable:
        return F(p);
    case MultiplierSymbol::Kind::gaussian:
        break;
    }
    throw DomainError("mean_energy_normalize: needs a salpeter or stable symbol");
}

} // namespace

EnergyNormalized mean_energy_normalize(const WaveField& phi, const MultiplierSymbol& F) {
    if (std::abs(phi.norm_sq() - 1.0) > 1e-8) throw DomainError("mean_energy_normalize: phi must be L2-normalized");
    const bool massless = F.kind != MultiplierSymbol::Kind::salpeter || F.m == 0.0;
    if (massless) require_zero_mode(phi, "mean_energy_normalize");
    const auto& g = phi.grid;
    const WaveField Pphi(g, apply_multiplier(g, phi.values, [&](double p) { return positive_energy(F, p); }));
    const double E = inner(phi, Pphi).real();
    if (!(E > 0.0)) throw DomainError("mean_energy_normalize: mean energy must be positive");
    const double s = 1.0 / std::sqrt(E);
    WaveField Phi(g, apply_multiplier(g, phi.values, [&](double p) { return s * std::sqrt(positive_energy(F, p)); }));
    return {std::move(Phi), E};
}

WaveField mean_energy_restore(const WaveField& Phi, const MultiplierSymbol& F, double E) {
    if (!(E > 0.0)) throw DomainError("mean_energy_restore: E must be positive");
    const auto& g = Phi.grid;
    const double s = std::sqrt(E);
    auto mult = [&](double p) -> cplx {
        const double P = positive_energy(F, p);
        return P > 0.0 ? s / std::sqrt(P) : 0.0;
    };
    return WaveField(g, apply_multiplier(g, Phi.values, mult));
}

} // namespace nonlocal
