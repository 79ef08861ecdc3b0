#pragma once

#include <string>

namespace nonlocal {

//! Dispersion F(p) (energy units, hbar = 1). The single source of truth for the dynamics.
struct MultiplierSymbol {
    enum class Kind { gaussian, stable, salpeter };

    Kind kind = Kind::stable;
    double D = 1.0;     //!< gaussian: F = D p^2
    double mu = 1.0;    //!< stable: F = gamma |p|^mu
    double gamma = 1.0;
    double m = 0.0;     //!< salpeter: F = c (sqrt(p^2 + m^2 c^2) - m c)
    double c = 1.0;

    static MultiplierSymbol gaussian(double D);
    static MultiplierSymbol stable(double mu, double gamma = 1.0);
    static MultiplierSymbol salpeter(double m, double c = 1.0);

    double operator()(double p) const;
    //! Offset making F strictly positive: m c^2 for salpeter, 0 otherwise.
    double rest_energy() const { return kind == Kind::salpeter ? m * c * c : 0.0; }
    std::string describe() const;
};

//! Symmetric jump measure nu(dy) of a pure-jump Levy generator.
struct LevyMeasure {
    enum class Family { stable, relativistic };

    Family family = Family::stable;
    double mu = 1.0;        //!< stable index in (0,2)
    double mass = 0.0;      //!< relativistic mass (c = 1 inside the measure)
    int dim = 1;            //!< 1 or 3
    double intensity = 1.0; //!< overall prefactor
    double cutoff = 0.0;    //!< small-jump radius; 0 selects 4 dx on the grid

    static LevyMeasure stable(double mu, int dim = 1, double intensity = 1.0);
    static LevyMeasure relativistic(double mass, int dim = 1, double intensity = 1.0);
    //! Measure whose generator is -F(p) for F = stable(mu, gamma) or salpeter(m, c).
    static LevyMeasure matching(const MultiplierSymbol& F);

    //! nu(y); throws DomainError at y = 0.
    double density(double y) const;
    //! Symbol F(p) = int (1 - cos py) nu(dy) in closed form.
    double symbol(double p) const;
    //! int_0^delta y^2 nu(y) dy (1D, one side).
    double inner_second_moment(double delta) const { return inner_moment(2, delta); }
    //! int_0^delta y^k nu(y) dy for even k >= 2.
    double inner_moment(int k, double delta) const;
    //! sum_n nu(y + n P) for 0 < |y| <= P/2 (1D).
    double periodized_density(double y, double period) const;
    //! sum_{n != 0} nu(y + n P): smooth, finite at y = 0.
    double image_density(double y, double period) const;
    //! Coefficient of |y|^{-mu-n} for the stable family.
    double stable_coefficient() const;
};

} // namespace nonlocal
