#pragma once

#include "nonlocal/generators.hpp"
#include "nonlocal/grid.hpp"

namespace nonlocal {

struct Regularization {
    double eps = 0.0;
};

struct PropagatorFamily {
    enum class Tag { gaussian_free_1d, oscillator_1d, cauchy_1d, cauchy_3d, salpeter_1d, salpeter_3d };

    Tag tag = Tag::cauchy_1d;
    double m = 0.0;
    double c = 1.0;

    static PropagatorFamily gaussian_free();
    static PropagatorFamily oscillator();
    static PropagatorFamily cauchy(double c = 1.0, int dim = 1);
    static PropagatorFamily salpeter(double m, double c = 1.0, int dim = 1);

    bool pole_family() const { return tag != Tag::gaussian_free_1d && tag != Tag::oscillator_1d; }
    int dim() const { return tag == Tag::cauchy_3d || tag == Tag::salpeter_3d ? 3 : 1; }
    //! The 1D family with the same dispersion.
    PropagatorFamily one_dimensional() const;
    //! F(p) with K^ = exp(-i F(p) (t - i eps)).
    double dispersion(double p) const;
};

//! Default eps = max(10 dx / c, 1e-3 / c).
Regularization default_regularization(const PropagatorFamily& fam, double dx);

//! K_t^eps(x) (radial argument in 3D) in closed form.
cplx quantum_propagator(const PropagatorFamily& fam, double x, double t, Regularization reg);
//! Oscillator kernel K(y, x, t) of exp(-i t H), H = (1/2)(-d^2 + x^2 - 1).
cplx oscillator_propagator(double y, double x, double t, Regularization reg);
//! Same value from the Fourier integral of exp(-i F(p)(t - i eps)) (eps > 0).
cplx quantum_propagator_fourier(const PropagatorFamily& fam, double x, double t, Regularization reg);
//! exp(-i F(p)(t - i eps)).
cplx propagator_multiplier(const PropagatorFamily& fam, double p, double t, Regularization reg);

//! psi_0 * K_t^eps by zero-padded FFT convolution on the grid of psi_0.
WaveField propagate_with_kernel(const WaveField& psi0, const PropagatorFamily& fam, double t, Regularization reg,
                                Diagnostics* diag = nullptr);
//! Radial 3D propagation: u = r psi evolves by the 1D kernel of the odd extension.
RadialField propagate_radial_with_kernel(const RadialField& psi0, const PropagatorFamily& fam, double t,
                                         Regularization reg, Diagnostics* diag = nullptr);

//! Convolution with the unregularized principal-value kernel i t / pi (x^2 - t^2).
WaveField naive_cauchy_propagate(const WaveField& psi0, double t);

} // namespace nonlocal
