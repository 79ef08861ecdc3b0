#pragma once

namespace nonlocal {

struct KernelFamily {
    enum class Tag { heat, stable, cauchy, relativistic };

    Tag tag = Tag::heat;
    double D = 1.0;
    double mu = 1.0;
    double gamma = 1.0;
    double c = 1.0;
    double m = 0.0;
    int dim = 1;

    static KernelFamily heat(double D, int dim = 1);
    static KernelFamily stable(double mu, double gamma = 1.0, int dim = 1);
    static KernelFamily cauchy(double c = 1.0, int dim = 1);
    static KernelFamily relativistic(double m, double c = 1.0, int dim = 1);

    //! Exponent F(p) with k^ = exp(-t F(p)).
    double exponent(double p) const;
};

struct KernelValue {
    double value = 0.0;
    double error = 0.0; //!< quadrature/series estimate; 0 for closed forms
};

//! Transition density k_t(x) (radial argument in 3D), normalized to unit mass.
KernelValue semigroup_kernel_eval(const KernelFamily& fam, double x, double t);
double semigroup_kernel(const KernelFamily& fam, double x, double t);

//! Kernel of exp(-t H), H = (1/2)(-d^2 + x^2 - 1).
double mehler_kernel(double y, double x, double t);
double mehler_kernel_hyperbolic(double y, double x, double t);

//! OU transition density from u at time s to v at time t (velocity form).
double ou_transition(double u, double s, double v, double t, double beta, double D);
double ou_stationary(double v, double beta, double D);

//! E[X(t') X(t)] for the stationary dimensionless OU process.
double ou_correlation(double tp, double t);
//! Same quantity from the defining double integral.
double ou_correlation_quadrature(double tp, double t);

} // namespace nonlocal
