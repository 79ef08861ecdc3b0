#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace nonlocal {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

//! Periodic lattice x_j = -L + j dx on [-L, L), dx = 2L/n, n a power of two.
class Grid1D {
public:
    Grid1D(std::size_t n, double L);

    std::size_t n() const { return n_; }
    double L() const { return L_; }
    double dx() const { return 2.0 * L_ / static_cast<double>(n_); }
    double dp() const;
    double x(std::size_t j) const { return -L_ + static_cast<double>(j) * dx(); }
    //! Angular frequency of FFT bin k (standard FFT ordering).
    double p(std::size_t k) const;
    double p_max() const;
    RVec xs() const;
    RVec ps() const;

    bool operator==(const Grid1D& o) const { return n_ == o.n_ && L_ == o.L_; }

private:
    std::size_t n_;
    double L_;
};

//! Complex samples of psi on a Grid1D.
struct WaveField {
    Grid1D grid;
    CVec values;

    WaveField(Grid1D g, CVec v);
    static WaveField from_function(const Grid1D& g, const std::function<cplx(double)>& f);

    //! Trapezoidal (periodic) quadrature of |psi|^2.
    double norm_sq() const;
    double norm() const;
    RVec density() const;
    RVec real() const;
    std::size_t size() const { return values.size(); }
};

//! Radial lattice r_j = j dr, j = 1..n-1, dr = R/n, Dirichlet at r = R.
//! Fields are stored as u = r psi so the radial transform is a sine transform.
class RadialGrid3D {
public:
    RadialGrid3D(std::size_t n, double R);

    std::size_t n() const { return n_; }
    std::size_t nodes() const { return n_ - 1; }
    double R() const { return R_; }
    double dr() const { return R_ / static_cast<double>(n_); }
    double dk() const;
    double r(std::size_t i) const { return static_cast<double>(i + 1) * dr(); }
    double k(std::size_t i) const { return static_cast<double>(i + 1) * dk(); }
    RVec rs() const;
    RVec ks() const;

    bool operator==(const RadialGrid3D& o) const { return n_ == o.n_ && R_ == o.R_; }

private:
    std::size_t n_;
    double R_;
};

struct RadialField {
    RadialGrid3D grid;
    CVec u; //!< r * psi(r) at interior nodes

    RadialField(RadialGrid3D g, CVec u_values);
    static RadialField from_function(const RadialGrid3D& g, const std::function<cplx(double)>& psi);

    cplx psi(std::size_t i) const { return u[i] / grid.r(i); }
    CVec psi_values() const;
    //! 4 pi int |psi|^2 r^2 dr.
    double norm_sq() const;
};

namespace fft {

//! In-place unnormalized forward DFT (e^{-2 pi i jk/n}).
void forward(CVec& a);
//! In-place inverse DFT including the 1/n factor.
void inverse(CVec& a);
//! DST-I of size m: y_k = 2 sum_j x_j sin(pi (j+1)(k+1)/(m+1)).
void dst1(RVec& a);
//! DCT-I of size m: y_k = x_0 + (-1)^k x_{m-1} + 2 sum_{j=1}^{m-2} x_j cos(pi j k/(m-1)).
void dct1(RVec& a);

} // namespace fft

//! Inverse transform of mult(p_k) * FFT(values); pure spectral operator application.
CVec apply_multiplier(const Grid1D& g, const CVec& values, const std::function<cplx(double)>& mult);
//! Sine-transform analogue for radial fields: mult(|k|) acting on u.
CVec apply_radial_multiplier(const RadialGrid3D& g, const CVec& u, const std::function<cplx(double)>& mult);

//! Continuous-normalized spectrum psi~(p_k) = (2 pi)^{-1/2} int psi e^{-ipx} dx.
CVec spectrum(const WaveField& f);
//! Inverse of spectrum().
WaveField from_spectrum(const Grid1D& g, const CVec& spec);

//! Spectral d/dx.
CVec derivative(const Grid1D& g, const CVec& values, int order = 1);

//! Fraction of spectral energy in the outer 10% of frequencies (resolution check).
double spectral_tail(const Grid1D& g, const CVec& values);

//! L-infinity distance restricted to |x| <= xmax.
double max_abs_diff(const Grid1D& g, const RVec& a, const RVec& b, double xmax);

} // namespace nonlocal
