#pragma once

#include "nonlocal/grid.hpp"
#include "nonlocal/symbols.hpp"

#include <string>
#include <vector>

namespace nonlocal {

enum class Execution { serial, parallel };

//! Soft warnings collected by operations that can still return a result.
struct Diagnostics {
    std::vector<std::string> warnings;
    double spectral_tail = 0.0;
    double wrap_mass = 0.0;

    void warn(std::string w) { warnings.push_back(std::move(w)); }
};

//! F(p^) psi via the Fourier multiplier route.
WaveField apply_symbol(const WaveField& psi, const MultiplierSymbol& F, Diagnostics* diag = nullptr);

struct LevyOptions {
    double cutoff = 0.0;           //!< small-jump radius; 0 selects 4 dx
    bool keep_counterterm = true;  //!< false only for the divergence diagnostic
    Execution exec = Execution::parallel;
};

//! int [f(x+y) - f(x)] nu(dy) on the periodic grid (jump measure periodized
//! over the box), PV pairing of +-y, Taylor closure on |y| < cutoff.
WaveField apply_levy_generator(const WaveField& f, const LevyMeasure& nu, const LevyOptions& opt = {});

double levy_measure_density(const LevyMeasure& nu, double y);

//! int (1 - cos py) nu(dy) on the real line by quadrature (1D).
double levy_symbol_quadrature(const LevyMeasure& nu, double p);

//! Antiderivative with zero mean; requires a vanishing zero mode.
WaveField inverse_gradient(const WaveField& g);

//! Multiplies the spectrum by |k|^{2s}; for s < 0 the zero mode must vanish.
WaveField fractional_power(const WaveField& f, double s);

//! Current of the free stable flow: d_t rho = -d_x j for mu in [1,2).
WaveField grad_inv_fractional(const WaveField& rho, double mu);

//! V = -lambda (F(p^) sqrt_rho) / sqrt_rho, so (lambda F + V) sqrt_rho = 0.
//! For the Gaussian family lambda D plays the role of 2 m D^2.
RVec ground_state_potential(const WaveField& sqrt_rho, const MultiplierSymbol& F, double lambda);

//! (lambda F(p^) + V) psi.
WaveField apply_hamiltonian(const WaveField& psi, const MultiplierSymbol& F, double lambda, const RVec& V);

//! V = 2 m D^2 [b^2 / 2D + d_x b].
RVec drift_to_potential(const Grid1D& g, const RVec& b, double m, double D);

//! Spectral derivative of a real field after removing its linear trend.
RVec detrended_derivative(const Grid1D& g, const RVec& b);

//! Osmotic/current decomposition b = u + v carried with the invariant density.
struct DriftFields {
    RVec b, u, v, rho_star;
};

//! b = D d_x ln rho_star for a stationary density (u = b, v = 0).
DriftFields stationary_drift(const Grid1D& g, const RVec& rho_star, double D);

//! Fokker-Planck operator D d_x^2 g - d_x (b g).
RVec fokker_planck(const Grid1D& g, const RVec& field, const RVec& b, double D);

struct EnergyNormalized {
    WaveField Phi;
    double E;
};

//! E = <phi, P phi>, Phi = E^{-1/2} P^{1/2} phi with P = F + rest energy.
EnergyNormalized mean_energy_normalize(const WaveField& phi, const MultiplierSymbol& F);
//! phi = sqrt(E) P^{-1/2} Phi.
WaveField mean_energy_restore(const WaveField& Phi, const MultiplierSymbol& F, double E);

//! <a, b> = int conj(a) b dx.
cplx inner(const WaveField& a, const WaveField& b);

} // namespace nonlocal
