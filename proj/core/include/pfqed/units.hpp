#pragma once

#include <optional>

namespace pfqed {

/// Conversion constants. Energies inside the library are in units of the
/// electron rest energy (hbar = c = 1, m = 1 by default).
struct Constants
{
    double rest_energy_eV{510998.95};
    double eV_to_MHz{2.417989e8};
};

/// Physical inputs shared by every module.
struct Params
{
    double m{1.0};              ///< physical mass
    std::optional<double> m0{}; ///< bare mass; derived from m when absent
    double alpha{1.0 / 137.0};
    double beta{1.0 / 137.0};
    double Z{1.0};
    double Lambda{0.0};          ///< UV cutoff, in the same units as m
    double beta_z_limit{1.0};    ///< hydrogenic formulas require beta*Z below this
    Constants constants{};

    double beta_z() const noexcept { return beta * Z; }

    /// Throws PreconditionError naming the offending field.
    void validate() const;
};

/// Energy in natural units to MHz.
double to_frequency(double energy, Params const& params);

/// Magnitude of the hydrogenic ground-state energy, m (beta Z)^2 / 2.
double rydberg(Params const& params);

} // namespace pfqed
