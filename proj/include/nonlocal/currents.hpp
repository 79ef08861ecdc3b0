#pragma once

#include "nonlocal/generators.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/propagators.hpp"

#include <vector>

namespace nonlocal {

struct CurrentSample {
    double x;
    double t;
    double j;
};

//! (c / pi) x / (x^2 + lambda^2), lambda = b + c t: current of the Cauchy semigroup density.
double semigroup_cauchy_current(double x, double t, double b, double c = 1.0);
//! lambda / pi (x^2 + lambda^2).
double semigroup_cauchy_density(double x, double t, double b, double c = 1.0);

struct CurrentOptions {
    int nodes = 64;                  //!< exponential-sum nodes for 1 / (a + b)
    std::size_t direct_limit = 512;  //!< largest grid for the O(N^2) double sum
};

//! Spectral current of exp(-i t F(p^)) with F = c sqrt(p^2 + m^2 c^2) (or c|p|):
//! j = (c / 2 pi) int int (k + p) / (a_k + a_p) conj(psi~_p) psi~_k e^{i x (k - p)},
//! evaluated on the grid by splitting 1 / (a_k + a_p) into exponentials.
RVec quantum_current_field(const WaveField& psi, const PropagatorFamily& fam, const CurrentOptions& opt = {});
//! Radial j_r on the grid nodes for u = r psi: r^2 j_r is the 1D current of the odd extension of u.
RVec quantum_current_field(const RadialField& psi, const PropagatorFamily& fam, const CurrentOptions& opt = {});
//! The same double sum evaluated directly at the given positions (n <= direct_limit).
RVec quantum_current_direct(const WaveField& psi, const PropagatorFamily& fam, const RVec& xs,
                            const CurrentOptions& opt = {});
//! Samples at arbitrary positions (trigonometric interpolation of the grid current).
std::vector<CurrentSample> quantum_current(const WaveField& psi, const PropagatorFamily& fam, const RVec& xs, double t,
                                           const CurrentOptions& opt = {});
std::vector<CurrentSample> quantum_current(const RadialField& psi, const PropagatorFamily& fam, const RVec& rs,
                                           double t, const CurrentOptions& opt = {});

//! d_t |psi|^2 = 2 Im(conj(psi) F(p^) psi) for i d_t psi = F(p^) psi.
RVec density_rate(const WaveField& psi, const MultiplierSymbol& F);

//! Current of the unit Gaussian packet under |p| by the single-angle quadrature.
double gaussian_cauchy_current_closed(double x, double t, double* imag_residue = nullptr);

enum class CurrentRule { laskin_candidate, sgn_spectral };

struct ContinuityResidual {
    RVec residual;       //!< d_t |psi|^2 + d_x j
    RVec drho_dt;        //!< exact spectral rate under |p|^mu
    RVec div_j;
    RVec first_bracket;  //!< -i [(d psi*) B d psi - (d psi) B d psi*], B = |D|^{mu/2 - 1}
    double linf = 0.0;
};

//! Continuity check for i d_t psi = |D|^{mu/2} psi with a candidate current.
//! sgn_spectral is the exact mu = 1 current.
ContinuityResidual continuity_residual(const WaveField& psi, double mu, CurrentRule rule);

//! psi* d B d psi versus -psi* |D|^{mu/2} psi; returns the L-infinity gap.
double fractional_identity_gap(const WaveField& psi, double mu);

} // namespace nonlocal
