#pragma once

#include "nonlocal/generators.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/symbols.hpp"

#include <string>
#include <vector>

namespace nonlocal {

//! exp(-i F(p) t) applied spectrally.
WaveField evolve_unitary(const WaveField& psi, const MultiplierSymbol& F, double t, Diagnostics* diag = nullptr);
RadialField evolve_unitary(const RadialField& psi, const MultiplierSymbol& F, double t);
//! exp(-F(p) t), t >= 0.
WaveField evolve_dissipative(const WaveField& rho, const MultiplierSymbol& F, double t);
RadialField evolve_dissipative(const RadialField& rho, const MultiplierSymbol& F, double t);

//! exp(-F(p) s) for complex s; s = i t is the unitary multiplier.
cplx semigroup_multiplier(const MultiplierSymbol& F, double p, cplx s);

//! Named initial data (all L2-normalized).
struct InitialData {
    enum class Kind { lorentz, quad_lorentz, gaussian, salpeter_bessel, radial3d, file };

    Kind kind = Kind::quad_lorentz;
    double gamma = 1.0;
    double width = 1.0;
    double m = 1.0;
    std::string path;

    //! "quad_lorentz:1", "gaussian:1", "salpeter_bessel:1:0.5", "radial3d:1", "file:psi.csv".
    static InitialData parse(const std::string& spec);
    std::string describe() const;
    bool radial() const { return kind == Kind::radial3d; }
    //! Symbol under which oracle_solution is exact.
    MultiplierSymbol canonical_symbol() const;
};

//! Closed-form psi(x, t) (r in 3D) under the canonical symbol.
cplx oracle_solution(const InitialData& init, double x, double t);
cplx initial_value(const InitialData& init, double x);

WaveField make_initial(const InitialData& init, const Grid1D& g);
RadialField make_initial(const InitialData& init, const RadialGrid3D& g);

//! Two-column-complex CSV (x,Re,Im) resampled by band-limited interpolation and normalized.
WaveField load_initial_csv(const std::string& path, const Grid1D& g);

struct Scenario {
    InitialData initial;
    MultiplierSymbol symbol = MultiplierSymbol::stable(1.0);
    std::vector<double> times;
    std::size_t n = 4096;
    double L = 200.0;
};

struct Mode {
    double x;
    bool maximum;
};
//! Critical points of rho(x,t) for the quad_lorentz family.
std::vector<Mode> pdf_modes(double gamma, double t);

//! Right side of d_t rho = lambda [-s |D|^{mu/2}(rho / s) + s^{-1} (|D|^{mu/2} s) rho], s = rho*^{1/2}.
RVec confining_rhs(const Grid1D& g, const RVec& rho, const RVec& sqrt_rho_star, double mu, double lambda);
//! Same right side written with jump-rate weights exp(Phi(x) - Phi(y)).
RVec confining_rhs_phi(const Grid1D& g, const RVec& rho, const RVec& Phi, double mu, double lambda);
//! One explicit Euler step; throws StepSizeError when the step is too large.
RVec confining_step(const Grid1D& g, const RVec& rho, const RVec& sqrt_rho_star, double mu, double lambda, double dt);
//! -d_x(b rho) - lambda |D|^{mu/2} rho (the Langevin-driven form).
RVec fractional_fokker_planck_rhs(const Grid1D& g, const RVec& rho, const RVec& b, double mu, double lambda);

//! int [rho(x+y) - rho(x)] nu(dy).
WaveField master_rhs(const WaveField& rho, const LevyMeasure& nu, const LevyOptions& opt = {});

enum class Direction { forward, inverse };
//! 3D radial Fourier pair via sine transforms of r f(r); the dual lives on
//! RadialGrid3D(n, n pi / R) and stores k f^(k).
RadialField radial_fourier(const RadialField& f, Direction dir, Diagnostics* diag = nullptr);

} // namespace nonlocal
