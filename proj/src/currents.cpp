#include "nonlocal/currents.hpp"

#include "nonlocal/errors.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nonlocal {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void check_family(const PropagatorFamily& fam) {
    using Tag = PropagatorFamily::Tag;
    if (fam.tag == Tag::gaussian_free_1d || fam.tag == Tag::oscillator_1d)
        throw DomainError("quantum_current: family must be cauchy or salpeter");
}

// a(p) with F = c a(p) + const.
double reduced_energy(const PropagatorFamily& fam, double p) {
    const double mc = fam.m * fam.c;
    return std::sqrt(p * p + mc * mc);
}

// Trigonometric interpolant of grid samples at x.
double interpolate(const Grid1D& g, const CVec& spec, double x) {
    const std::size_t N = g.n(), nyq = N / 2;
    double s = 0.0;
    const double d = x + g.L();
    for (std::size_t k = 0; k < N; ++k) {
        if (k == nyq) {
            s += spec[k].real() * std::cos(g.p(k) * d);
            continue;
        }
        s += (spec[k] * std::polar(1.0, g.p(k) * d)).real();
    }
    return s / static_cast<double>(N);
}

} // namespace

double semigroup_cauchy_current(double x, double t, double b, double c) {
    const double lam = b + c * t;
    if (!(lam > 0.0)) throw DomainError("semigroup_cauchy_current: b + c t must be positive");
    return c / pi * x / (x * x + lam * lam);
}

double semigroup_cauchy_density(double x, double t, double b, double c) {
    const double lam = b + c * t;
    if (!(lam > 0.0)) throw DomainError("semigroup_cauchy_density: b + c t must be positive");
    return lam / (pi * (x * x + lam * lam));
}

RVec quantum_current_field(const WaveField& psi, const PropagatorFamily& fam, const CurrentOptions& opt) {
    check_family(fam);
    if (fam.dim() != 1) throw UnsupportedRegime("quantum_current: 3D input must be a RadialField");
    const auto& g = psi.grid;
    const std::size_t N = g.n(), nyq = N / 2;
    const double mc = fam.m * fam.c;
    const double amax = reduced_energy(fam, g.p_max());
    const double lo = mc > 0.0 ? 2.0 * mc : 0.5 * g.dp();
    const auto rule = quad::inverse_exp_sum(std::min(lo, 2.0 * amax), 2.0 * amax, opt.nodes);

    CVec base = psi.values;
    fft::forward(base);
    RVec a(N);
    for (std::size_t k = 0; k < N; ++k) a[k] = reduced_energy(fam, g.p(k));

    RVec j(N, 0.0);
    const int Q = static_cast<int>(rule.s.size());
#pragma omp parallel
    {
        RVec local(N, 0.0);
        CVec f(N), df(N);
#pragma omp for schedule(dynamic)
        for (int q = 0; q < Q; ++q) {
            for (std::size_t k = 0; k < N; ++k) {
                f[k] = base[k] * std::exp(-rule.s[q] * a[k]);
                df[k] = k == nyq ? cplx(0.0) : f[k] * cplx(0.0, g.p(k));
            }
            fft::inverse(f);
            fft::inverse(df);
            for (std::size_t i = 0; i < N; ++i) local[i] += 2.0 * rule.w[q] * std::imag(std::conj(f[i]) * df[i]);
        }
#pragma omp critical
        for (std::size_t i = 0; i < N; ++i) j[i] += local[i];
    }
    for (auto& v : j) v *= fam.c;
    return j;
}

RVec quantum_current_field(const RadialField& psi, const PropagatorFamily& fam, const CurrentOptions& opt) {
    check_family(fam);
    const auto& rg = psi.grid;
    const std::size_t n = rg.n();
    const Grid1D g(2 * n, rg.R());
    CVec odd(2 * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        odd[n + 1 + i] = psi.u[i];
        odd[n - 1 - i] = -psi.u[i];
    }
    const RVec j1 = quantum_current_field(WaveField(g, std::move(odd)), fam.one_dimensional(), opt);
    RVec jr(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = rg.r(i);
        jr[i] = j1[n + 1 + i] / (r * r);
    }
    return jr;
}

RVec quantum_current_direct(const WaveField& psi, const PropagatorFamily& fam, const RVec& xs,
                            const CurrentOptions& opt) {
    check_family(fam);
    if (fam.dim() != 1) throw UnsupportedRegime("quantum_current_direct: 1D only");
    const auto& g = psi.grid;
    const std::size_t N = g.n(), nyq = N / 2;
    if (N > opt.direct_limit) throw DomainError("quantum_current_direct: grid exceeds the direct-evaluation limit");
    const CVec S = spectrum(psi);
    const double dp = g.dp();
    RVec out(xs.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        CVec e(N);
        for (std::size_t k = 0; k < N; ++k) e[k] = k == nyq ? cplx(0.0) : S[k] * std::polar(1.0, g.p(k) * x);
        double s = 0.0;
        for (std::size_t a = 0; a < N; ++a) {
            if (a == nyq) continue;
            const double p = g.p(a), ap = reduced_energy(fam, p);
            for (std::size_t b = 0; b < N; ++b) {
                if (b == nyq) continue;
                const double k = g.p(b), den = ap + reduced_energy(fam, k);
                if (den == 0.0) continue;
                s += (k + p) / den * (std::conj(e[a]) * e[b]).real();
            }
        }
        out[i] = fam.c * dp * dp / (2.0 * pi) * s;
    }
    return out;
}

std::vector<CurrentSample> quantum_current(const WaveField& psi, const PropagatorFamily& fam, const RVec& xs,
                                           double t, const CurrentOptions& opt) {
    const RVec j = quantum_current_field(psi, fam, opt);
    CVec spec(j.begin(), j.end());
    fft::forward(spec);
    std::vector<CurrentSample> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {xs[i], t, interpolate(psi.grid, spec, xs[i])};
    return out;
}

std::vector<CurrentSample> quantum_current(const RadialField& psi, const PropagatorFamily& fam, const RVec& rs,
                                           double t, const CurrentOptions& opt) {
    check_family(fam);
    const auto& rg = psi.grid;
    const std::size_t n = rg.n();
    const Grid1D g(2 * n, rg.R());
    CVec odd(2 * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        odd[n + 1 + i] = psi.u[i];
        odd[n - 1 - i] = -psi.u[i];
    }
    const RVec j1 = quantum_current_field(WaveField(g, std::move(odd)), fam.one_dimensional(), opt);
    CVec spec(j1.begin(), j1.end());
    fft::forward(spec);
    std::vector<CurrentSample> out(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double r = rs[i];
        if (!(r > 0.0)) throw DomainError("quantum_current: radial positions must be positive");
        out[i] = {r, t, interpolate(g, spec, r) / (r * r)};
    }
    return out;
}

RVec density_rate(const WaveField& psi, const MultiplierSymbol& F) {
    const auto& g = psi.grid;
    const CVec Fpsi = apply_multiplier(g, psi.values, [&](double p) { return cplx(F(p)); });
    RVec out(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) out[i] = 2.0 * std::imag(std::conj(psi.values[i]) * Fpsi[i]);
    return out;
}

double gaussian_cauchy_current_closed(double x, double t, double* imag_residue) {
    auto integrand = [&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double lam = x * (s - c) + t * (std::abs(c) - std::abs(s));
        // int_0^inf r e^{-r^2} e^{i lam r} dr
        const cplx Jr(0.5 - 0.5 * lam * specfun::dawson(0.5 * lam),
                      0.25 * lam * std::sqrt(pi) * std::exp(-0.25 * lam * lam));
        return (s + c) / (std::abs(s) + std::abs(c)) * Jr;
    };
    // |sin| and |cos| kink at multiples of pi/2; lambda is linear in sin, cos on each sector.
    cplx total = 0.0;
    const int panels = 4 + static_cast<int>(std::ceil(0.5 * (std::abs(x) + std::abs(t))));
    for (int q = 0; q < 8; ++q) total += quad::gauss_panels(integrand, q * pi / 4.0, (q + 1) * pi / 4.0, panels);
    total *= 2.0 / std::pow(2.0 * pi, 1.5);
    if (imag_residue) *imag_residue = std::abs(total.imag());
    return total.real();
}

ContinuityResidual continuity_residual(const WaveField& psi, double mu, CurrentRule rule) {
    if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("continuity_residual: mu must lie in (0, 2]");
    const auto& g = psi.grid;
    const std::size_t N = g.n();
    ContinuityResidual res;
    res.drho_dt = density_rate(psi, MultiplierSymbol::stable(mu, 1.0));

    // B d = i sgn(p) |p|^{mu - 1}
    auto Bd = [&](double p) {
        if (p == 0.0 || std::abs(p) >= g.p_max()) return cplx(0.0);
        return cplx(0.0, std::copysign(std::pow(std::abs(p), mu - 1.0), p));
    };
    CVec conj_psi(N);
    for (std::size_t i = 0; i < N; ++i) conj_psi[i] = std::conj(psi.values[i]);
    const CVec dpsi = derivative(g, psi.values, 1);
    const CVec dconj = derivative(g, conj_psi, 1);
    const CVec Bdpsi = apply_multiplier(g, psi.values, Bd);
    const CVec Bdconj = apply_multiplier(g, conj_psi, Bd);
    res.first_bracket.resize(N);
    for (std::size_t i = 0; i < N; ++i)
        res.first_bracket[i] = (-I * (dconj[i] * Bdpsi[i] - dpsi[i] * Bdconj[i])).real();

    RVec j(N);
    if (rule == CurrentRule::laskin_candidate) {
        for (std::size_t i = 0; i < N; ++i)
            j[i] = (-I * (conj_psi[i] * Bdpsi[i] - psi.values[i] * Bdconj[i])).real();
    } else {
        if (mu != 1.0) throw UnsupportedRegime("continuity_residual: the sgn_spectral current exists only for mu = 1");
        j = quantum_current_field(psi, PropagatorFamily::cauchy(1.0, 1));
    }
    CVec jc(j.begin(), j.end());
    const CVec dj = derivative(g, jc, 1);
    res.div_j.resize(N);
    res.residual.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        res.div_j[i] = dj[i].real();
        res.residual[i] = res.drho_dt[i] + res.div_j[i];
        res.linf = std::max(res.linf, std::abs(res.residual[i]));
    }
    return res;
}

double fractional_identity_gap(const WaveField& psi, double mu) {
    const auto& g = psi.grid;
    const std::size_t N = g.n();
    // d B d = -|p|^mu; Nyquist is dropped by the odd factors, so compare on the same band.
    auto Bd = [&](double p) {
        if (p == 0.0 || std::abs(p) >= g.p_max()) return cplx(0.0);
        return cplx(0.0, std::copysign(std::pow(std::abs(p), mu - 1.0), p));
    };
    const CVec Bdpsi = apply_multiplier(g, psi.values, Bd);
    const CVec dBdpsi = derivative(g, Bdpsi, 1);
    const CVec Apsi = apply_multiplier(g, psi.values, [&](double p) {
        return std::abs(p) >= g.p_max() ? cplx(0.0) : cplx(std::pow(std::abs(p), mu));
    });
    double gap = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        gap = std::max(gap, std::abs(std::conj(psi.values[i]) * (dBdpsi[i] + Apsi[i])));
    return gap;
}

} // namespace nonlocal
