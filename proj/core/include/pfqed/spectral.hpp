#pragma once

#include "pfqed/units.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace pfqed {

// Radial problems are solved in scaled units: lengths in 1/(m beta Z), energies
// in m (beta Z)^2. In these units the Hamiltonian of channel l is
//   h_l = -1/2 d^2/dr^2 + l(l+1)/(2 r^2) - 1/r
// acting on the reduced function u = r R.

enum class GridScheme
{
    log,    ///< r = r0 (e^x - 1): dense near the nucleus, r(0) = 0 exactly
    uniform ///< r = x
};

struct GridConfig
{
    std::size_t n{2000}; ///< interior nodes
    double r_max{200.0};
    double r0{0.01}; ///< length scale of the log map
    GridScheme scheme{GridScheme::log};

    /// Same scheme with twice the nodes and twice the box.
    GridConfig doubled() const { return GridConfig{2 * n, 2 * r_max, r0, scheme}; }
};

/// A grid vector holds z_i = sqrt(w_i) u(r_i), with w_i = r'(x_i) dx the
/// quadrature weight, so that sum z_i^2 approximates the integral of u^2 dr and
/// grid inner products are plain dot products.
using GridVector = std::vector<double>;

class RadialGrid
{
  public:
    explicit RadialGrid(GridConfig const& config);

    std::size_t size() const noexcept { return r_.size(); }
    GridConfig const& config() const noexcept { return config_; }
    double step() const noexcept { return dx_; }
    double r_max() const noexcept { return config_.r_max; }

    std::vector<double> const& r() const noexcept { return r_; }
    /// dr/dx, d2r/dx2 and d3r/dx3 at the nodes.
    std::vector<double> const& dr() const noexcept { return dr_; }
    std::vector<double> const& d2r() const noexcept { return d2r_; }
    std::vector<double> const& d3r() const noexcept { return d3r_; }

    /// Samples a reduced function u(r) as a grid vector.
    GridVector sample(std::function<double(double)> const& u) const;

    /// Ratio of the mapped step of this grid to that of `finer`.
    double step_ratio(RadialGrid const& finer) const { return dx_ / finer.dx_; }

  private:
    GridConfig config_;
    double dx_;
    std::vector<double> r_;
    std::vector<double> dr_;
    std::vector<double> d2r_;
    std::vector<double> d3r_;
};

/// Symmetric pentadiagonal matrix of h_l in the grid-vector representation,
/// with Dirichlet conditions at r = 0 and r = r_max. Fourth-order stencils.
class RadialOperator
{
  public:
    RadialOperator(int l, std::shared_ptr<RadialGrid const> grid, double energy_unit);

    int l() const noexcept { return l_; }
    std::size_t size() const noexcept { return d0_.size(); }
    RadialGrid const& grid() const noexcept { return *grid_; }
    std::shared_ptr<RadialGrid const> grid_ptr() const noexcept { return grid_; }
    /// m (beta Z)^2: multiply scaled energies by this to get natural units.
    double energy_unit() const noexcept { return energy_unit_; }

    /// Diagonals: (i, i), (i, i+1), (i, i+2).
    std::vector<double> const& diag0() const noexcept { return d0_; }
    std::vector<double> const& diag1() const noexcept { return d1_; }
    std::vector<double> const& diag2() const noexcept { return d2_; }

    /// Ascending eigenvalues, computed once at construction.
    std::vector<double> const& eigenvalues() const noexcept { return eig_; }
    /// Largest |eigenvalue|.
    double norm() const noexcept { return norm_; }

    /// out = (h + shift) x
    void apply(double const* x, double* out, double shift = 0.0) const;
    GridVector apply(GridVector const& x, double shift = 0.0) const;

  private:
    int l_;
    std::shared_ptr<RadialGrid const> grid_;
    double energy_unit_;
    std::vector<double> d0_;
    std::vector<double> d1_;
    std::vector<double> d2_;
    std::vector<double> eig_;
    double norm_{0.0};
};

struct SpectralDecomp
{
    int l{0};
    std::size_t n{0};     ///< grid size
    std::size_t count{0}; ///< number of eigenpairs
    double energy_unit{1.0};
    std::vector<double> eigenvalues; ///< ascending, scaled units
    std::vector<double> vectors;     ///< column-major n x count, orthonormal

    double const* vector(std::size_t i) const { return vectors.data() + i * n; }

    /// c_i = <v_i | w> for every eigenpair.
    std::vector<double> coefficients(GridVector const& w) const;
};

/// Operator of channel l on the given grid. Only m and beta Z enter, through
/// the energy unit.
RadialOperator build_radial_hamiltonian(int l, Params const& params, std::shared_ptr<RadialGrid const> grid);

/// Eigenpairs of the operator, lowest `count` of them (all when count == 0).
/// Eigenvalues come from a banded symmetric solver; eigenvectors from inverse
/// iteration with the banded LU, refined by a Rayleigh quotient.
SpectralDecomp eigendecompose(RadialOperator const& op, std::size_t count = 0);

/// <w| g(h) |w> = sum_i g(E_i) |<v_i|w>|^2 with E_i in scaled units.
/// Throws if g is not finite at some eigenvalue.
double apply_operator_function(SpectralDecomp const& decomp, std::function<double(double)> const& g,
                               GridVector const& w);

/// Same sum with precomputed coefficients c_i = <v_i|w>.
double spectral_sum(SpectralDecomp const& decomp, std::function<double(double)> const& g,
                    std::vector<double> const& coefficients);

/// Solves (h + shift) x = rhs. Rejects shifts with min |E_i + shift| below
/// near_singular_tol * max(1, |shift|) so callers can route them elsewhere.
GridVector resolve(RadialOperator const& op, double shift, GridVector const& rhs, double near_singular_tol = 1e-8);

/// First-derivative building blocks on grid vectors. For a channel-L reduced
/// function u the two radial parts of the gradient are
///   D+_L u = u' - (L+1) u / r   (towards L+1)
///   D-_L u = u' + L u / r       (towards L-1)
/// The discrete d/dr is exactly antisymmetric, so (D+_L)^T = -D-_{L+1}.
class RadialDerivative
{
  public:
    explicit RadialDerivative(std::shared_ptr<RadialGrid const> grid);

    std::size_t size() const noexcept { return inv_r_.size(); }

    /// Matrix element of d/dr between nodes i and j (zero unless |i-j| <= 2).
    double d_dr(std::size_t i, std::size_t j) const noexcept;
    double inv_r(std::size_t i) const noexcept { return inv_r_[i]; }

    /// Entry (i, j) of D+_L or D-_L.
    double plus(int L, std::size_t i, std::size_t j) const noexcept;
    double minus(int L, std::size_t i, std::size_t j) const noexcept;

    void apply_d_dr(double const* x, double* out) const;
    void apply_plus(int L, double const* x, double* out) const;
    void apply_minus(int L, double const* x, double* out) const;

  private:
    std::vector<double> inv_r_;
    std::vector<double> inv_dr_;
    double dx_;
};

struct Extrapolated
{
    double value{0.0};
    double error{0.0};
    double coarse{0.0};
    double fine{0.0};
};

/// Richardson step for a quantity computed on grids with step ratio `ratio`
/// (coarse / fine) and leading error of the given order. The error estimate
/// is |fine - coarse|.
Extrapolated richardson(double coarse, double fine, double ratio, int order = 4);

} // namespace pfqed
