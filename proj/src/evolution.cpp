#include "nonlocal/evolution.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("initial data: cannot parse " + what + " from '" + s + "'");
    }
}

// Unit-width Gaussian packet (2 pi)^{-1/4} e^{-x^2/4} under |p|, in Dawson form.
cplx gaussian_unit(double x, double t) {
    const double a = x - t, b = x + t;
    const double pre = std::pow(2.0 / pi, 0.25) / std::sqrt(2.0 * pi);
    const double re = 0.5 * std::sqrt(pi) * (std::exp(-0.25 * a * a) + std::exp(-0.25 * b * b));
    const double im = specfun::dawson(0.5 * a) - specfun::dawson(0.5 * b);
    return pre * cplx(re, im);
}

cplx lorentz_G(double sigma, double gamma) {
    return cplx(0.5 * pi, -std::asinh(sigma / gamma)) / std::hypot(gamma, sigma);
}

// e^{-i phi} with the phase product reduced in extended precision, so that
// split time steps compose to rounding level even when F t is large.
cplx unit_phase(double F, double t) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double ph = std::fmod(static_cast<long double>(F) * static_cast<long double>(t), two_pi);
    return {static_cast<double>(std::cos(ph)), static_cast<double>(-std::sin(ph))};
}

} // namespace

cplx semigroup_multiplier(const MultiplierSymbol& F, double p, cplx s) {
    const double f = F(p);
    return std::exp(-f * s.real()) * unit_phase(f, s.imag());
}

WaveField evolve_unitary(const WaveField& psi, const MultiplierSymbol& F, double t, Diagnostics* diag) {
    if (diag) {
        const double tail = spectral_tail(psi.grid, psi.values);
        diag->spectral_tail = tail;
        if (tail > 1e-10) diag->warn("evolve_unitary: spectrum not resolved on the grid");
    }
    if (t == 0.0) return psi;
    const auto& g = psi.grid;
    return WaveField(g, apply_multiplier(g, psi.values, [&](double p) { return unit_phase(F(p), t); }));
}

RadialField evolve_unitary(const RadialField& psi, const MultiplierSymbol& F, double t) {
    if (t == 0.0) return psi;
    return RadialField(psi.grid,
                       apply_radial_multiplier(psi.grid, psi.u, [&](double k) { return unit_phase(F(k), t); }));
}

WaveField evolve_dissipative(const WaveField& rho, const MultiplierSymbol& F, double t) {
    if (t < 0.0) throw DomainError("evolve_dissipative: t must be non-negative");
    if (t == 0.0) return rho;
    const auto& g = rho.grid;
    return WaveField(g, apply_multiplier(g, rho.values, [&](double p) { return cplx(std::exp(-F(p) * t)); }));
}

RadialField evolve_dissipative(const RadialField& rho, const MultiplierSymbol& F, double t) {
    if (t < 0.0) throw DomainError("evolve_dissipative: t must be non-negative");
    if (t == 0.0) return rho;
    return RadialField(rho.grid,
                       apply_radial_multiplier(rho.grid, rho.u, [&](double k) { return cplx(std::exp(-F(k) * t)); }));
}

InitialData InitialData::parse(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw DomainError("initial data: empty specification");
    InitialData d;
    const std::string& name = parts[0];
    auto num = [&](std::size_t i, double def) {
        return parts.size() > i && !parts[i].empty() ? parse_number(parts[i], name + " parameter") : def;
    };
    if (name == "lorentz") {
        d.kind = Kind::lorentz;
        d.gamma = num(1, 1.0);
    } else if (name == "quad_lorentz") {
        d.kind = Kind::quad_lorentz;
        d.gamma = num(1, 1.0);
    } else if (name == "gaussian") {
        d.kind = Kind::gaussian;
        d.width = num(1, 1.0);
    } else if (name == "salpeter_bessel") {
        d.kind = Kind::salpeter_bessel;
        d.gamma = num(1, 1.0);
        d.m = num(2, 1.0);
    } else if (name == "radial3d") {
        d.kind = Kind::radial3d;
        d.gamma = num(1, 1.0);
    } else if (name == "file") {
        d.kind = Kind::file;
        if (parts.size() < 2) throw DomainError("initial data: file:<path> needs a path");
        d.path = spec.substr(5);
    } else {
        throw DomainError("initial data: unknown kind '" + name + "'");
    }
    if (!(d.gamma > 0.0) || !(d.width > 0.0) || !(d.m > 0.0))
        throw DomainError("initial data: parameters must be positive");
    return d;
}

std::string InitialData::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case Kind::lorentz: os << "lorentz:" << gamma; break;
    case Kind::quad_lorentz: os << "quad_lorentz:" << gamma; break;
    case Kind::gaussian: os << "gaussian:" << width; break;
    case Kind::salpeter_bessel: os << "salpeter_bessel:" << gamma << ":" << m; break;
    case Kind::radial3d: os << "radial3d:" << gamma; break;
    case Kind::file: os << "file:" << path; break;
    }
    return os.str();
}

MultiplierSymbol InitialData::canonical_symbol() const {
    switch (kind) {
    case Kind::salpeter_bessel:
        return MultiplierSymbol::salpeter(m, 1.0);
    case Kind::file:
        throw UnsupportedRegime("initial data: file input has no closed-form solution");
    default:
        return MultiplierSymbol::stable(1.0, 1.0);
    }
}

cplx oracle_solution(const InitialData& d, double x, double t) {
    const double g = d.gamma;
    switch (d.kind) {
    case InitialData::Kind::lorentz:
        return std::sqrt(g / pi) / pi * (lorentz_G(t - x, g) + lorentz_G(t + x, g));
    case InitialData::Kind::quad_lorentz: {
        const cplx s(g, t);
        return std::sqrt(2.0 * g / pi) * s / (s * s + x * x);
    }
    case InitialData::Kind::gaussian: {
        const double w = d.width;
        return gaussian_unit(x / w, t / w) / std::sqrt(w);
    }
    case InitialData::Kind::salpeter_bessel: {
        // gamma -> gamma + i t for sqrt(p^2 + m^2); e^{i m t} removes the rest energy.
        const double m = d.m;
        const double A = std::sqrt(m / (pi * specfun::bessel_k(1.0, 2.0 * m * g)));
        const cplx s(g, t), w = std::sqrt(x * x + s * s);
        return A * std::exp(I * m * t) * s * std::exp(-m * w) * specfun::bessel_k_complex_scaled(1, m * w) / w;
    }
    case InitialData::Kind::radial3d: {
        const cplx s(g, t), d2 = x * x + s * s;
        return std::pow(2.0 * g, 1.5) / pi * s / (d2 * d2);
    }
    case InitialData::Kind::file:
        break;
    }
    throw UnsupportedRegime("oracle_solution: file input has no closed form");
}

cplx initial_value(const InitialData& d, double x) { return oracle_solution(d, x, 0.0); }

WaveField make_initial(const InitialData& d, const Grid1D& g) {
    if (d.kind == InitialData::Kind::file) return load_initial_csv(d.path, g);
    if (d.radial()) throw DomainError("make_initial: radial3d needs a RadialGrid3D");
    return WaveField::from_function(g, [&](double x) { return initial_value(d, x); });
}

RadialField make_initial(const InitialData& d, const RadialGrid3D& g) {
    if (!d.radial()) throw DomainError("make_initial: only radial3d lives on a RadialGrid3D");
    return RadialField::from_function(g, [&](double r) { return initial_value(d, r); });
}

WaveField load_initial_csv(const std::string& path, const Grid1D& g) {
    std::ifstream in(path);
    if (!in) throw DomainError("initial data: cannot open '" + path + "'");
    std::vector<double> xs;
    CVec vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split(line, ',');
        if (cols.size() < 2) throw DomainError("initial data: expected x,Re[,Im] columns in '" + path + "'");
        try {
            const double x = std::stod(cols[0]);
            const double re = std::stod(cols[1]);
            const double im = cols.size() > 2 ? std::stod(cols[2]) : 0.0;
            xs.push_back(x);
            vs.emplace_back(re, im);
        } catch (const std::exception&) {
            if (xs.empty()) continue; // header
            throw DomainError("initial data: malformed row '" + line + "'");
        }
    }
    if (xs.size() < 2) throw DomainError("initial data: need at least two samples");
    const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[i - 1] - h) > 1e-9 * std::abs(h))
            throw DomainError("initial data: samples must be uniformly spaced");
    // Whittaker-Shannon interpolation from the sample lattice.
    CVec v(g.n());
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.x(j);
        if (x < xs.front() - h || x > xs.back() + h) continue;
        cplx s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double z = pi * (x - xs[i]) / h;
            s += vs[i] * (std::abs(z) < 1e-12 ? 1.0 : std::sin(z) / z);
        }
        v[j] = s;
    }
    WaveField f(g, std::move(v));
    const double nrm = f.norm();
    if (!(nrm > 0.0)) throw DomainError("initial data: file state vanishes on the grid");
    for (auto& z : f.values) z /= nrm;
    return f;
}

std::vector<Mode> pdf_modes(double gamma, double t) {
    if (!(gamma > 0.0)) throw DomainError("pdf_modes: gamma must be positive");
    // rho ~ 1 / (x^4 + 2 x^2 (g^2 - t^2) + (g^2 + t^2)^2); critical points solve x^3 + x (g^2 - t^2) = 0.
    const double d = t * t - gamma * gamma;
    if (d <= 0.0) return {{0.0, true}};
    const double r = std::sqrt(d);
    return {{-r, true}, {0.0, false}, {r, true}};
}

RVec confining_rhs(const Grid1D& g, const RVec& rho, const RVec& s, double mu, double lambda) {
    const std::size_t N = g.n();
    if (rho.size() != N || s.size() != N) throw DomainError("confining_rhs: size mismatch");
    const auto F = MultiplierSymbol::stable(mu, 1.0);
    CVec q(N), sv(s.begin(), s.end());
    for (std::size_t j = 0; j < N; ++j) {
        if (!(s[j] > 0.0)) throw DomainError("confining_rhs: rho*^{1/2} must be strictly positive");
        q[j] = rho[j] / s[j];
    }
    const CVec Aq = apply_multiplier(g, q, [&](double p) { return cplx(F(p)); });
    const CVec As = apply_multiplier(g, sv, [&](double p) { return cplx(F(p)); });
    RVec out(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = lambda * (-s[j] * Aq[j].real() + As[j].real() / s[j] * rho[j]);
    return out;
}

RVec confining_rhs_phi(const Grid1D& g, const RVec& rho, const RVec& Phi, double mu, double lambda) {
    const std::size_t N = g.n();
    if (rho.size() != N || Phi.size() != N) throw DomainError("confining_rhs_phi: size mismatch");
    const auto F = MultiplierSymbol::stable(mu, 1.0);
    CVec a(N), b(N);
    for (std::size_t j = 0; j < N; ++j) {
        a[j] = std::exp(-Phi[j]) * rho[j];
        b[j] = std::exp(Phi[j]);
    }
    const CVec Aa = apply_multiplier(g, a, [&](double p) { return cplx(F(p)); });
    const CVec Ab = apply_multiplier(g, b, [&](double p) { return cplx(F(p)); });
    RVec out(N);
    for (std::size_t j = 0; j < N; ++j)
        out[j] = lambda * (-std::exp(Phi[j]) * Aa[j].real() + rho[j] * std::exp(-Phi[j]) * Ab[j].real());
    return out;
}

RVec confining_step(const Grid1D& g, const RVec& rho, const RVec& s, double mu, double lambda, double dt) {
    if (!(dt > 0.0)) throw StepSizeError("confining_step: dt must be positive");
    const RVec r = confining_rhs(g, rho, s, mu, lambda);
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    if (dt * rmax > 0.1) {
        std::ostringstream os;
        os << "confining_step: dt * |rhs|_inf = " << dt * rmax << " exceeds 0.1";
        throw StepSizeError(os.str());
    }
    // Explicit Euler on the stiffest mode |p_max|^mu.
    const double stiff = dt * lambda * std::pow(g.p_max(), mu);
    if (stiff > 2.0) {
        std::ostringstream os;
        os << "confining_step: dt * lambda * p_max^mu = " << stiff << " exceeds the explicit stability bound 2";
        throw StepSizeError(os.str());
    }
    RVec out(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) out[j] = rho[j] + dt * r[j];
    return out;
}

RVec fractional_fokker_planck_rhs(const Grid1D& g, const RVec& rho, const RVec& b, double mu, double lambda) {
    const std::size_t N = g.n();
    CVec bf(N), rv(rho.begin(), rho.end());
    for (std::size_t j = 0; j < N; ++j) bf[j] = b[j] * rho[j];
    const CVec dbf = derivative(g, bf, 1);
    const auto F = MultiplierSymbol::stable(mu, 1.0);
    const CVec Ar = apply_multiplier(g, rv, [&](double p) { return cplx(F(p)); });
    RVec out(N);
    for (std::size_t j = 0; j < N; ++j) out[j] = -dbf[j].real() - lambda * Ar[j].real();
    return out;
}

WaveField master_rhs(const WaveField& rho, const LevyMeasure& nu, const LevyOptions& opt) {
    return apply_levy_generator(rho, nu, opt);
}

RadialField radial_fourier(const RadialField& f, Direction, Diagnostics* diag) {
    const auto& g = f.grid;
    const std::size_t m = g.nodes();
    if (diag) {
        double peak = 0.0;
        for (const auto& z : f.u) peak = std::max(peak, std::abs(z));
        const double tail = std::abs(f.u.back());
        if (tail > 1e-12 * std::max(peak, 1e-300)) {
            std::ostringstream os;
            os << "radial_fourier: r f(r) at the outer radius is " << tail;
            diag->warn(os.str());
        }
    }
    // k f^(k) = sqrt(2/pi) int r f(r) sin(k r) dr; the pair is symmetric, so
    // forward and inverse share one formula on swapped grids.
    RVec re(m), im(m);
    for (std::size_t i = 0; i < m; ++i) {
        re[i] = f.u[i].real();
        im[i] = f.u[i].imag();
    }
    fft::dst1(re);
    fft::dst1(im);
    const double c = std::sqrt(2.0 / pi) * 0.5 * g.dr();
    CVec u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = c * cplx(re[i], im[i]);
    const RadialGrid3D dual(g.n(), static_cast<double>(g.n()) * g.dk());
    return RadialField(dual, std::move(u));
}

} // namespace nonlocal
