#pragma once

#include "pfqed/hydrogen.hpp"
#include "pfqed/spectral.hpp"
#include "pfqed/units.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pfqed {

// ---------------------------------------------------------------------------
// Scalar kernels. Photon momenta k are measured in units of 2m.

/// f(e, Lambda) = (4/3 pi) int_0^Lambda k^5 / (e + k^2 + k) (1/k^4 + 1/(k^2+k)^2) dk, e >= 0.
double f_function(double e, double Lambda, double tol = 1e-12);

/// Closed form of f(0, Lambda).
double f_zero_closed(double Lambda);

/// S(e) = lim_{Lambda -> inf} f(0, Lambda) - f(e, Lambda). For e < 0 the
/// k integral is a Cauchy principal value about the positive root of
/// k^2 + k + e = 0. Arguments with |1 + 4e| < 1e-8 are rejected.
double s_function(double e, double tol = 1e-12);

/// Positive root of k^2 + k + e = 0 for e < 0.
double s_pole(double e);

/// Bethe's small-argument form (4/3 pi) e ln(1/|e|), zero at e = 0.
double bethe_kernel(double e);

/// Angular weights of the photon kernel for k along the polar axis.
struct FormFactorWeights
{
    /// 2|k| k_i k_j / (|k|^2 + |k|)^2 contracted with the unit vector along k.
    static double longitudinal(double k) { return 2.0 * k / ((k + 1.0) * (k + 1.0)); }
    /// (|k|^2 delta_ij - k_i k_j) / |k|^3 on either transverse direction.
    static double transverse(double k) { return 1.0 / k; }
    /// Trace of the transverse weight.
    static double transverse_trace(double k) { return 2.0 / k; }
};

/// (1/3 pi^2) int d^3k |k|^4/(|k|^2+|k|)^2 (1/|k|^4 + 1/(|k|^2+|k|)^2), by quadrature.
double t_bound_constant(double tol = 1e-13);

// ---------------------------------------------------------------------------
// Operators of one grid level.

/// Radial Hamiltonians, eigendecompositions and the derivative stencil for
/// one grid, built on first use.
class RadialContext
{
  public:
    RadialContext(Params const& params, GridConfig const& grid);

    Params const& params() const noexcept { return params_; }
    std::shared_ptr<RadialGrid const> grid() const noexcept { return grid_; }
    RadialDerivative const& derivative() const noexcept { return derivative_; }

    RadialOperator const& op(int L);
    SpectralDecomp const& decomp(int L);
    /// Drops cached eigenvectors (they dominate memory on fine grids).
    void release_decomps() { decomps_.clear(); }

  private:
    Params params_;
    std::shared_ptr<RadialGrid const> grid_;
    RadialDerivative derivative_;
    std::map<int, std::unique_ptr<RadialOperator>> ops_;
    std::map<int, std::unique_ptr<SpectralDecomp>> decomps_;
};

// ---------------------------------------------------------------------------
// Spectral sums on a single grid level.

/// An eigenvalue whose S argument is negative, handled as a principal value.
struct PoleRecord
{
    int L{0};
    double eigenvalue{0.0}; ///< scaled units
    double argument{0.0};   ///< (E_i - e_n)/(2m)
    double k_pole{0.0};     ///< photon momentum of the pole, units of 2m
    bool interpolated{false};
};

struct SpectralSumResult
{
    double value{0.0}; ///< natural units
    std::vector<PoleRecord> poles;
};

/// (alpha/m) sum_j <p_j phi | S((h - e_n)/2m) | p_j phi>.
SpectralSumResult s_term(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx,
                         double tol = 1e-11);

/// Same sum with S replaced by Bethe's kernel.
double bethe_shift(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx);

// ---------------------------------------------------------------------------
// T-term.

enum class TMode
{
    bound,
    leading,
    resolvent
};

std::string to_string(TMode mode);
TMode t_mode_from_string(std::string const& s);

struct TBoundResult
{
    double epsilon{0.0};
    double value{0.0};
};

/// Rigorous upper bound on the T contribution of the ground state for a
/// given epsilon in (0, 1), assembled from the two sum rules.
double t_bound(HydrogenState const& state, Params const& params, double epsilon);

/// The bound minimized over epsilon: a grid scan followed by Brent refinement.
TBoundResult t_bound_minimized(HydrogenState const& state, Params const& params);

struct TTermOptions
{
    TMode mode{TMode::leading};
    int l_max{4};
    double tol{1e-7};
    /// Complex shift used for excited states, relative to (beta Z)^2 / 2.
    double eta_rel{0.02};
    /// Accepted relative change between l_max and l_max + 1 (resolvent mode).
    double l_max_tol{0.05};
};

struct TTermResult
{
    double value{0.0}; ///< natural units
    double quadrature_error{0.0};
    double l_max_change{0.0}; ///< |T(l_max + 1) - T(l_max)|, resolvent mode
    TMode mode{TMode::leading};
};

/// (alpha/m) sum_ij <p_i phi | T_ij | p_j phi> on one grid level.
/// Excited states support the leading mode only; their k integral is a
/// principal value obtained from a complex shift extrapolated to zero.
TTermResult t_term(HydrogenState const& state, RadialContext& ctx, TTermOptions const& opt);

/// Integrand of the T-term k integral (without the overall alpha m (beta Z)^4
/// prefactor) at a single k for the given mode; exposed for tests and benchmarks.
double t_integrand(HydrogenState const& state, RadialContext& ctx, double k, TMode mode, int l_max,
                   double eta = 0.0);

// ---------------------------------------------------------------------------
// Reports.

struct LevelConfig
{
    GridConfig grid{};
    double tol{1e-11};
    TTermOptions t{};
    bool extrapolate{true}; ///< evaluate on grid and grid.doubled(), Richardson-combine
};

struct Frequencies
{
    double coulomb_term{0.0};
    double s_term{0.0};
    double t_term{0.0};
    double total{0.0};
    double bethe_approx{0.0};
    double jensen_bound{0.0};
    double jensen_shift{0.0};
    double convergence_error{0.0};
};

struct ShiftReport
{
    int n{1};
    int l{0};
    bool binding_convention{true}; ///< true: E(0) - E(V); false: level energy
    double coulomb_term{0.0};      ///< m (beta Z)^2 / (2 n^2)
    double s_term{0.0};
    double t_term{0.0};
    TMode t_mode{TMode::leading};
    double total{0.0};
    double bethe_approx{0.0}; ///< Bethe shift that replaces s_term when T is dropped
    std::optional<double> jensen_bound;
    std::optional<double> jensen_shift;
    double s_error{0.0};
    double t_error{0.0};
    double convergence_error{0.0};
    std::vector<PoleRecord> poles;
    Frequencies in_MHz;
};

struct JensenResult
{
    double bound{0.0}; ///< m (beta Z)^2 / 2 - m alpha (beta Z)^2 S((beta Z)^2)
    double shift{0.0}; ///< -m alpha (beta Z)^2 S((beta Z)^2)
    double shift_MHz{0.0};
};

JensenResult jensen_lower_bound(Params const& params);

/// E(0) - E(V) = m (beta Z)^2 / 2 - S-term + T-term for the ground state.
ShiftReport binding_energy(Params const& params, LevelConfig const& config);

/// -m (beta Z)^2 / (2 n^2) + S-term - T-term for phi_{n,l}.
ShiftReport level_shift(int n, int l, Params const& params, LevelConfig const& config);

struct LambResult
{
    double energy{0.0};
    double MHz{0.0};
    double error_MHz{0.0};
    ShiftReport s2;
    ShiftReport p2;
};

/// Radiative part of level_shift(2, 0) - level_shift(2, 1).
LambResult lamb_splitting(Params const& params, LevelConfig const& config);

/// Bethe-style splitting: Bethe shift only, T dropped.
LambResult lamb_splitting_bethe(Params const& params, LevelConfig const& config);

} // namespace pfqed
