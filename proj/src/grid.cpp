#include "nonlocal/grid.hpp"

#include "nonlocal/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace nonlocal {

namespace {

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// The planner is not thread safe; execution with the new-array API is.
std::mutex plan_mutex;
std::map<std::pair<int, std::size_t>, fftw_plan> plan_cache;

enum PlanKind { kForward = 0, kBackward = 1, kDst1 = 2, kDct1 = 3 };

fftw_plan get_plan(PlanKind kind, std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int in = static_cast<int>(n);
    fftw_plan plan = nullptr;
    if (kind == kForward || kind == kBackward) {
        std::vector<fftw_complex> buf(n);
        plan = fftw_plan_dft_1d(in, buf.data(), buf.data(), kind == kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                                flags);
    } else {
        std::vector<double> buf(n);
        plan = fftw_plan_r2r_1d(in, buf.data(), buf.data(), kind == kDst1 ? FFTW_RODFT00 : FFTW_REDFT00, flags);
    }
    plan_cache.emplace(key, plan);
    return plan;
}

} // namespace

Grid1D::Grid1D(std::size_t n, double L) : n_(n), L_(L) {
    if (!is_pow2(n) || n < 64) throw DomainError("Grid1D: n must be a power of two >= 64");
    if (!(L > 0.0)) throw DomainError("Grid1D: L must be positive");
}

double Grid1D::dp() const { return std::numbers::pi / L_; }

double Grid1D::p(std::size_t k) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
    auto kk = static_cast<std::ptrdiff_t>(k);
    if (kk >= n / 2) kk -= n;
    return static_cast<double>(kk) * dp();
}

double Grid1D::p_max() const { return static_cast<double>(n_ / 2) * dp(); }

RVec Grid1D::xs() const {
    RVec v(n_);
    for (std::size_t j = 0; j < n_; ++j) v[j] = x(j);
    return v;
}

RVec Grid1D::ps() const {
    RVec v(n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = p(k);
    return v;
}

WaveField::WaveField(Grid1D g, CVec v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n()) throw DomainError("WaveField: sample count does not match grid");
}

WaveField WaveField::from_function(const Grid1D& g, const std::function<cplx(double)>& f) {
    CVec v(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) v[j] = f(g.x(j));
    return WaveField(g, std::move(v));
}

double WaveField::norm_sq() const {
    double s = 0.0;
    for (const auto& z : values) s += std::norm(z);
    return s * grid.dx();
}

double WaveField::norm() const { return std::sqrt(norm_sq()); }

RVec WaveField::density() const {
    RVec r(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) r[j] = std::norm(values[j]);
    return r;
}

RVec WaveField::real() const {
    RVec r(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) r[j] = values[j].real();
    return r;
}

RadialGrid3D::RadialGrid3D(std::size_t n, double R) : n_(n), R_(R) {
    if (!is_pow2(n) || n < 64) throw DomainError("RadialGrid3D: n must be a power of two >= 64");
    if (!(R > 0.0)) throw DomainError("RadialGrid3D: R must be positive");
}

double RadialGrid3D::dk() const { return std::numbers::pi / R_; }

RVec RadialGrid3D::rs() const {
    RVec v(nodes());
    for (std::size_t i = 0; i < nodes(); ++i) v[i] = r(i);
    return v;
}

RVec RadialGrid3D::ks() const {
    RVec v(nodes());
    for (std::size_t i = 0; i < nodes(); ++i) v[i] = k(i);
    return v;
}

RadialField::RadialField(RadialGrid3D g, CVec u_values) : grid(g), u(std::move(u_values)) {
    if (u.size() != grid.nodes()) throw DomainError("RadialField: sample count does not match grid");
}

RadialField RadialField::from_function(const RadialGrid3D& g, const std::function<cplx(double)>& psi) {
    CVec u(g.nodes());
    for (std::size_t i = 0; i < g.nodes(); ++i) u[i] = g.r(i) * psi(g.r(i));
    return RadialField(g, std::move(u));
}

CVec RadialField::psi_values() const {
    CVec v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = psi(i);
    return v;
}

double RadialField::norm_sq() const {
    double s = 0.0;
    for (const auto& z : u) s += std::norm(z);
    return 4.0 * std::numbers::pi * s * grid.dr();
}

namespace fft {

void forward(CVec& a) {
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(get_plan(kForward, a.size()), p, p);
}

void inverse(CVec& a) {
    auto* p = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(get_plan(kBackward, a.size()), p, p);
    const double s = 1.0 / static_cast<double>(a.size());
    for (auto& z : a) z *= s;
}

void dst1(RVec& a) { fftw_execute_r2r(get_plan(kDst1, a.size()), a.data(), a.data()); }

void dct1(RVec& a) { fftw_execute_r2r(get_plan(kDct1, a.size()), a.data(), a.data()); }

} // namespace fft

CVec apply_multiplier(const Grid1D& g, const CVec& values, const std::function<cplx(double)>& mult) {
    CVec a = values;
    fft::forward(a);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= mult(g.p(k));
    fft::inverse(a);
    return a;
}

CVec apply_radial_multiplier(const RadialGrid3D& g, const CVec& u, const std::function<cplx(double)>& mult) {
    const std::size_t m = g.nodes();
    RVec re(m), im(m);
    for (std::size_t i = 0; i < m; ++i) {
        re[i] = u[i].real();
        im[i] = u[i].imag();
    }
    fft::dst1(re);
    fft::dst1(im);
    CVec spec(m);
    for (std::size_t i = 0; i < m; ++i) spec[i] = cplx(re[i], im[i]) * mult(g.k(i));
    for (std::size_t i = 0; i < m; ++i) {
        re[i] = spec[i].real();
        im[i] = spec[i].imag();
    }
    fft::dst1(re);
    fft::dst1(im);
    const double s = 1.0 / (2.0 * static_cast<double>(g.n()));
    CVec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = cplx(re[i], im[i]) * s;
    return out;
}

CVec spectrum(const WaveField& f) {
    const auto& g = f.grid;
    CVec a = f.values;
    fft::forward(a);
    const double c = g.dx() / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= c * std::polar(1.0, g.p(k) * g.L());
    return a;
}

WaveField from_spectrum(const Grid1D& g, const CVec& spec) {
    CVec a(spec.size());
    const double c = std::sqrt(2.0 * std::numbers::pi) / g.dx();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = spec[k] * c * std::polar(1.0, -g.p(k) * g.L());
    fft::inverse(a);
    return WaveField(g, std::move(a));
}

CVec derivative(const Grid1D& g, const CVec& values, int order) {
    const std::size_t nyq = g.n() / 2;
    CVec a = values;
    fft::forward(a);
    for (std::size_t k = 0; k < a.size(); ++k) {
        // The Nyquist bin has no well-defined sign for odd orders.
        if (k == nyq && order % 2 == 1) {
            a[k] = 0.0;
            continue;
        }
        a[k] *= std::pow(cplx(0.0, g.p(k)), order);
    }
    fft::inverse(a);
    return a;
}

double spectral_tail(const Grid1D& g, const CVec& values) {
    CVec a = values;
    fft::forward(a);
    double total = 0.0, tail = 0.0;
    const double cut = 0.9 * g.p_max();
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double e = std::norm(a[k]);
        total += e;
        if (std::abs(g.p(k)) >= cut) tail += e;
    }
    return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

double max_abs_diff(const Grid1D& g, const RVec& a, const RVec& b, double xmax) {
    double m = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
        if (std::abs(g.x(j)) <= xmax) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace nonlocal
