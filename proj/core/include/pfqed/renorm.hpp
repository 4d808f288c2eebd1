#pragma once

#include "pfqed/units.hpp"

#include <array>
#include <cstddef>

namespace pfqed {

/// Solution of the physical/bare mass relation.
struct MassRenormResult
{
    double m{0.0};
    double m0{0.0};
    double alpha{0.0};
    double Lambda{0.0};
    double residual{0.0};
    std::size_t iterations{0};
};

struct DispersionResult
{
    std::array<double, 3> P{0.0, 0.0, 0.0};
    double shift{0.0};          ///< E_P - E_0
    double p2_coefficient{0.0}; ///< closed-form |P|^2 coefficient
    double error_estimate{0.0};
    bool large_momentum_warning{false}; ///< |P| > m0 / 2, where the leading-order error degrades
};

/// Bare mass used by the free-electron formulas: params.m0 when set, otherwise
/// solved from params.m.
double effective_bare_mass(Params const& params);

/// Vacuum self-energy at leading order: (2 alpha / pi) (Lambda - 2 m0 ln(1 + Lambda / 2 m0)).
double self_energy(Params const& params);

/// Leading-order dispersion shift E_P - E_0 for a free electron, from a 2D
/// (|k|, cos theta) quadrature with P.k kept in the denominator.
DispersionResult dispersion_shift(std::array<double, 3> const& P, Params const& params, double tol = 1e-10);

/// Coefficient of |P|^2 in E_P - E_0 in closed form.
double dispersion_p2_coefficient(Params const& params);

/// The bracket ln(1 + L) - (3/4) L (L + 2/3) / (L + 1)^2 with L = Lambda / 2 m0.
double mass_bracket(double m0, double Lambda);

/// Physical mass for a given bare mass.
MassRenormResult physical_mass(double m0, double alpha, double Lambda);

/// Inverse of physical_mass by bracketed root finding on (0, m].
MassRenormResult bare_mass(double m, double alpha, double Lambda, double tol = 1e-15);

/// Mass in the dipole approximation, m0 + (4 alpha / 3 pi) Lambda.
double dipole_mass(double m0, double alpha, double Lambda);

} // namespace pfqed
