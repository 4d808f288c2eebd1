#include "pfqed/units.hpp"

#include "pfqed/error.hpp"

#include <cmath>
#include <string>

namespace pfqed {

namespace {

void require(bool ok, char const* msg)
{
    if (!ok) {
        throw PreconditionError(std::string("invalid parameters: ") + msg);
    }
}

} // namespace

void Params::validate() const
{
    require(std::isfinite(m) && m > 0, "m must be positive");
    require(!m0 || (std::isfinite(*m0) && *m0 > 0), "m0 must be positive");
    require(std::isfinite(alpha) && alpha >= 0, "alpha must be non-negative");
    require(std::isfinite(beta) && beta >= 0, "beta must be non-negative");
    require(std::isfinite(Z) && Z > 0, "Z must be positive");
    require(std::isfinite(Lambda) && Lambda >= 0, "Lambda must be non-negative");
    require(constants.rest_energy_eV > 0 && constants.eV_to_MHz > 0, "conversion constants must be positive");
    require(beta_z() < beta_z_limit, "beta*Z must stay below the hydrogenic validity limit");
}

double to_frequency(double energy, Params const& params)
{
    return energy * params.constants.rest_energy_eV * params.constants.eV_to_MHz;
}

double rydberg(Params const& params)
{
    double const bz = params.beta_z();
    return 0.5 * params.m * bz * bz;
}

} // namespace pfqed
