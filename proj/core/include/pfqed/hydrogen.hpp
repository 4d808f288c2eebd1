#pragma once

#include "pfqed/spectral.hpp"
#include "pfqed/units.hpp"

#include <memory>
#include <vector>

namespace pfqed {

/// Hydrogenic bound state phi_{n,l} sampled on a radial grid. Radial data are
/// in scaled units (lengths 1/(m beta Z)); `energy` is in natural units.
struct HydrogenState
{
    int n{1};
    int l{0};
    double energy{0.0};        ///< -m (beta Z)^2 / (2 n^2)
    double scaled_energy{0.0}; ///< -1 / (2 n^2)
    double momentum_unit{1.0}; ///< m beta Z
    double energy_unit{1.0};   ///< m (beta Z)^2
    std::shared_ptr<RadialGrid const> grid;
    GridVector radial;    ///< reduced function u = r R as a grid vector
    double grid_norm{0.0}; ///< sum of radial^2, close to 1

    /// Analytic R_{nl}(r) and dR/dr in scaled units.
    double R(double r) const;
    double dR(double r) const;

    /// |phi(0)|^2 in natural units (zero for l > 0).
    double density_at_origin() const;
};

/// One partial wave of the gradient of phi_{n,l}.
struct GradientChannel
{
    int L{0};          ///< l + 1 or l - 1
    double weight{0.0}; ///< (l+1)/(2l+1) or l/(2l+1)
    GridVector radial; ///< r (R' - l R / r) or r (R' + (l+1) R / r), scaled units
};

/// Partial-wave decomposition of grad phi. The m-averaged sum
///   sum_j <d_j phi | F(h) | d_j phi> = momentum_unit^2 sum_c weight_c <radial_c | F(h_{L_c}) | radial_c>
/// holds for any function F of the radial Hamiltonian.
struct GradientChannels
{
    std::vector<GradientChannel> channels;
    double momentum_unit{1.0};

    /// sum_c weight_c |radial_c|^2 in scaled units.
    double scaled_norm() const;
};

struct SumRules
{
    double p2_expectation{0.0};    ///< sum_j <p_j phi|p_j phi>, natural units
    double double_commutator{0.0}; ///< sum_j <p_j phi|(h - e_n)|p_j phi>, natural units
};

/// Samples the analytic state; throws PreconditionError if the grid cannot
/// normalize it to 1e-6.
HydrogenState bound_state(int n, int l, Params const& params, std::shared_ptr<RadialGrid const> grid);

GradientChannels gradient_channels(HydrogenState const& state, Params const& params);

/// Both sum rules on the state's grid; the double commutator uses the discrete
/// radial Hamiltonians of the gradient channels.
SumRules sum_rules(HydrogenState const& state, Params const& params);

/// Clebsch-Gordan coefficient <j1 m1; 1 mu | J M> for J in {j1-1, j1, j1+1}.
double clebsch_gordan_1(int j1, int m1, int mu, int J);

} // namespace pfqed
