#include "pfqed/spectral.hpp"

#include "pfqed/detail/banded.hpp"
#include "pfqed/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace pfqed {

RadialGrid::RadialGrid(GridConfig const& config)
    : config_(config)
{
    if (config.n < 5) {
        throw PreconditionError("RadialGrid: need at least 5 interior nodes");
    }
    if (!(config.r_max > 0) || (config.scheme == GridScheme::log && !(config.r0 > 0))) {
        throw PreconditionError("RadialGrid: r_max and r0 must be positive");
    }
    std::size_t const n = config.n;
    r_.resize(n);
    dr_.resize(n);
    d2r_.resize(n);
    d3r_.resize(n);
    if (config.scheme == GridScheme::log) {
        double const x_max = std::log1p(config.r_max / config.r0);
        dx_ = x_max / static_cast<double>(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            double const x = static_cast<double>(j + 1) * dx_;
            r_[j] = config.r0 * std::expm1(x);
            dr_[j] = d2r_[j] = d3r_[j] = config.r0 * std::exp(x);
        }
    } else {
        dx_ = config.r_max / static_cast<double>(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            r_[j] = static_cast<double>(j + 1) * dx_;
            dr_[j] = 1.0;
            d2r_[j] = d3r_[j] = 0.0;
        }
    }
}

GridVector RadialGrid::sample(std::function<double(double)> const& u) const
{
    GridVector z(size());
    for (std::size_t i = 0; i < size(); ++i) {
        z[i] = std::sqrt(dr_[i] * dx_) * u(r_[i]);
    }
    return z;
}

namespace {

std::vector<double> band_eigenvalues(std::vector<double> const& d0, std::vector<double> const& d1,
                                     std::vector<double> const& d2)
{
    int const n = static_cast<int>(d0.size());
    int const ldab = 3;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        ab[static_cast<std::size_t>(j) * ldab] = d0[j];
        if (j + 1 < n) {
            ab[static_cast<std::size_t>(j) * ldab + 1] = d1[j];
        }
        if (j + 2 < n) {
            ab[static_cast<std::size_t>(j) * ldab + 2] = d2[j];
        }
    }
    std::vector<double> w(n);
    lapack_int const info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'N', 'L', n, 2, ab.data(), ldab, w.data(), nullptr, 1);
    if (info != 0) {
        throw LinearAlgebraError("dsbevd failed with info " + std::to_string(info));
    }
    return w;
}

detail::BandMatrix<double> shifted_band(RadialOperator const& op, double shift)
{
    int const n = static_cast<int>(op.size());
    detail::BandMatrix<double> a(n, 2, 2);
    auto const& d0 = op.diag0();
    auto const& d1 = op.diag1();
    auto const& d2 = op.diag2();
    for (int i = 0; i < n; ++i) {
        a(i, i) = d0[i] + shift;
        if (i + 1 < n) {
            a(i, i + 1) = a(i + 1, i) = d1[i];
        }
        if (i + 2 < n) {
            a(i, i + 2) = a(i + 2, i) = d2[i];
        }
    }
    return a;
}

double dot(double const* a, double const* b, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void normalize(double* x, std::size_t n)
{
    double const nrm = std::sqrt(dot(x, x, n));
    if (!(nrm > 0) || !std::isfinite(nrm)) {
        throw LinearAlgebraError("inverse iteration produced a degenerate vector");
    }
    for (std::size_t i = 0; i < n; ++i) {
        x[i] /= nrm;
    }
}

} // namespace

namespace {

/// out = (h - rho) v with long double accumulation.
void residual_extended(RadialOperator const& op, double const* v, double rho, double* out)
{
    std::size_t const n = op.size();
    auto const& d0 = op.diag0();
    auto const& d1 = op.diag1();
    auto const& d2 = op.diag2();
    for (std::size_t i = 0; i < n; ++i) {
        long double s = (static_cast<long double>(d0[i]) - rho) * v[i];
        if (i + 1 < n) {
            s += static_cast<long double>(d1[i]) * v[i + 1];
        }
        if (i >= 1) {
            s += static_cast<long double>(d1[i - 1]) * v[i - 1];
        }
        if (i + 2 < n) {
            s += static_cast<long double>(d2[i]) * v[i + 2];
        }
        if (i >= 2) {
            s += static_cast<long double>(d2[i - 2]) * v[i - 2];
        }
        out[i] = static_cast<double>(s);
    }
}

} // namespace

RadialOperator::RadialOperator(int l, std::shared_ptr<RadialGrid const> grid, double energy_unit)
    : l_(l)
    , grid_(std::move(grid))
    , energy_unit_(energy_unit)
{
    if (l < 0) {
        throw PreconditionError("build_radial_hamiltonian: l must be non-negative");
    }
    if (!grid_) {
        throw PreconditionError("build_radial_hamiltonian: missing grid");
    }
    std::size_t const n = grid_->size();
    auto const& r = grid_->r();
    auto const& rp = grid_->dr();
    auto const& rpp = grid_->d2r();
    auto const& rppp = grid_->d3r();
    double const h = grid_->step();
    double const c = 1.0 / (12.0 * h * h);
    double const ll = static_cast<double>(l) * (l + 1);

    // Liouville form in x: A y = E r'^2 y with u = sqrt(r') y, then scale to the
    // symmetric grid-vector representation H = r'^{-1} A r'^{-1}.
    d0_.resize(n);
    d1_.resize(n - 1);
    d2_.resize(n - 2);
    for (std::size_t i = 0; i < n; ++i) {
        double const a1 = rpp[i] / rp[i];
        double const a2 = rppp[i] / rp[i];
        double const q = 0.5 * (0.75 * a1 * a1 - 0.5 * a2);
        double const U = 0.5 * ll / (r[i] * r[i]) - 1.0 / r[i];
        double kin = 15.0 * c;
        if (i == 0) {
            // Ghost node mirrors the first interior node: odd for l = 0, even otherwise.
            kin += (l == 0 ? -0.5 : 0.5) * c;
        }
        d0_[i] = (kin + q + rp[i] * rp[i] * U) / (rp[i] * rp[i]);
        if (i + 1 < n) {
            d1_[i] = -8.0 * c / (rp[i] * rp[i + 1]);
        }
        if (i + 2 < n) {
            d2_[i] = 0.5 * c / (rp[i] * rp[i + 2]);
        }
    }
    eig_ = band_eigenvalues(d0_, d1_, d2_);
    norm_ = std::max(std::abs(eig_.front()), std::abs(eig_.back()));
}

void RadialOperator::apply(double const* x, double* out, double shift) const
{
    std::size_t const n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = (d0_[i] + shift) * x[i];
        if (i + 1 < n) {
            s += d1_[i] * x[i + 1];
        }
        if (i >= 1) {
            s += d1_[i - 1] * x[i - 1];
        }
        if (i + 2 < n) {
            s += d2_[i] * x[i + 2];
        }
        if (i >= 2) {
            s += d2_[i - 2] * x[i - 2];
        }
        out[i] = s;
    }
}

GridVector RadialOperator::apply(GridVector const& x, double shift) const
{
    if (x.size() != size()) {
        throw PreconditionError("RadialOperator::apply: size mismatch");
    }
    GridVector out(size());
    apply(x.data(), out.data(), shift);
    return out;
}

RadialOperator build_radial_hamiltonian(int l, Params const& params, std::shared_ptr<RadialGrid const> grid)
{
    double const bz = params.beta_z();
    return RadialOperator(l, std::move(grid), params.m * bz * bz);
}

std::vector<double> SpectralDecomp::coefficients(GridVector const& w) const
{
    if (w.size() != n) {
        throw PreconditionError("SpectralDecomp::coefficients: size mismatch");
    }
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) {
        c[i] = dot(vector(i), w.data(), n);
    }
    return c;
}

SpectralDecomp eigendecompose(RadialOperator const& op, std::size_t count)
{
    std::size_t const n = op.size();
    if (count == 0 || count > n) {
        count = n;
    }
    SpectralDecomp d;
    d.l = op.l();
    d.n = n;
    d.count = count;
    d.energy_unit = op.energy_unit();
    d.eigenvalues.resize(count);
    d.vectors.assign(n * count, 0.0);

    auto const& lam = op.eigenvalues();
    std::vector<double> hv(n);
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    auto next = [&seed] {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(seed >> 11) * (1.0 / 9007199254740992.0) - 0.5;
    };

    std::size_t cluster_begin = 0;
    for (std::size_t i = 0; i < count; ++i) {
        double const sigma = lam[i];
        double const ortol = 1e-4 * std::max(1.0, std::abs(sigma));
        while (cluster_begin < i && lam[i] - lam[cluster_begin] > ortol) {
            ++cluster_begin;
        }
        // A tiny offset keeps the factorization away from an exact zero pivot.
        double const offset = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(sigma));
        detail::BandLU<double> lu(shifted_band(op, -(sigma + offset)));

        double* v = d.vectors.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = next();
        }
        normalize(v, n);
        for (int it = 0; it < 3; ++it) {
            lu.solve_in_place(v);
            for (std::size_t j = cluster_begin; j < i; ++j) {
                double const* u = d.vectors.data() + j * n;
                double const p = dot(u, v, n);
                for (std::size_t k = 0; k < n; ++k) {
                    v[k] -= p * u[k];
                }
            }
            normalize(v, n);
        }
        // Fix the sign so the largest component is positive.
        std::size_t imax = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (std::abs(v[k]) > std::abs(v[imax])) {
                imax = k;
            }
        }
        if (v[imax] < 0) {
            for (std::size_t k = 0; k < n; ++k) {
                v[k] = -v[k];
            }
        }
        // One Rayleigh-quotient step sharpens both the vector and the eigenvalue.
        op.apply(v, hv.data());
        double const rq = dot(v, hv.data(), n);
        detail::BandLU<double> lu_rq(shifted_band(op, -(rq + offset)));
        lu_rq.solve_in_place(v);
        normalize(v, n);

        // Correction from the residual accumulated in extended precision. The
        // solve is near-singular only along v itself, which is projected out.
        op.apply(v, hv.data());
        double const rho = dot(v, hv.data(), n);
        residual_extended(op, v, rho, hv.data());
        lu_rq.solve_in_place(hv.data());
        double const along = dot(v, hv.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] -= hv[k] - along * v[k];
        }
        normalize(v, n);
        op.apply(v, hv.data());
        d.eigenvalues[i] = dot(v, hv.data(), n);
    }
    return d;
}

double spectral_sum(SpectralDecomp const& decomp, std::function<double(double)> const& g,
                    std::vector<double> const& coefficients)
{
    if (coefficients.size() != decomp.count) {
        throw PreconditionError("spectral_sum: coefficient count mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < decomp.count; ++i) {
        double const gi = g(decomp.eigenvalues[i]);
        if (!std::isfinite(gi)) {
            std::ostringstream os;
            os << "operator function is not finite at eigenvalue E_" << i << " = " << decomp.eigenvalues[i];
            throw Error(os.str());
        }
        s += gi * coefficients[i] * coefficients[i];
    }
    return s;
}

double apply_operator_function(SpectralDecomp const& decomp, std::function<double(double)> const& g,
                               GridVector const& w)
{
    return spectral_sum(decomp, g, decomp.coefficients(w));
}

GridVector resolve(RadialOperator const& op, double shift, GridVector const& rhs, double near_singular_tol)
{
    if (rhs.size() != op.size()) {
        throw PreconditionError("resolve: size mismatch");
    }
    auto const& lam = op.eigenvalues();
    // Closest eigenvalue to -shift by bisection on the sorted spectrum.
    auto it = std::lower_bound(lam.begin(), lam.end(), -shift);
    double gap = std::numeric_limits<double>::infinity();
    if (it != lam.end()) {
        gap = std::min(gap, std::abs(*it + shift));
    }
    if (it != lam.begin()) {
        gap = std::min(gap, std::abs(*std::prev(it) + shift));
    }
    if (gap <= near_singular_tol * std::max(1.0, std::abs(shift))) {
        std::ostringstream os;
        os << "resolve: shift " << shift << " is within " << gap << " of an eigenvalue";
        throw PreconditionError(os.str());
    }

    detail::BandLU<double> lu(shifted_band(op, shift));
    GridVector x = rhs;
    lu.solve_in_place(x.data());
    // One step of iterative refinement.
    GridVector r = op.apply(x, shift);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = rhs[i] - r[i];
    }
    lu.solve_in_place(r.data());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += r[i];
    }
    return x;
}

RadialDerivative::RadialDerivative(std::shared_ptr<RadialGrid const> grid)
{
    if (!grid) {
        throw PreconditionError("RadialDerivative: missing grid");
    }
    std::size_t const n = grid->size();
    inv_r_.resize(n);
    inv_dr_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inv_r_[i] = 1.0 / grid->r()[i];
        inv_dr_[i] = 1.0 / grid->dr()[i];
    }
    dx_ = grid->step();
}

double RadialDerivative::d_dr(std::size_t i, std::size_t j) const noexcept
{
    // Fourth-order central difference in x, symmetrized with 1/r' so that the
    // matrix is antisymmetric in the grid-vector representation.
    long const off = static_cast<long>(j) - static_cast<long>(i);
    double c = 0.0;
    switch (off) {
    case 1:
        c = 8.0;
        break;
    case -1:
        c = -8.0;
        break;
    case 2:
        c = -1.0;
        break;
    case -2:
        c = 1.0;
        break;
    default:
        return 0.0;
    }
    return 0.5 * (inv_dr_[i] + inv_dr_[j]) * c / (12.0 * dx_);
}

double RadialDerivative::plus(int L, std::size_t i, std::size_t j) const noexcept
{
    return d_dr(i, j) - (i == j ? (L + 1) * inv_r_[i] : 0.0);
}

double RadialDerivative::minus(int L, std::size_t i, std::size_t j) const noexcept
{
    return d_dr(i, j) + (i == j ? L * inv_r_[i] : 0.0);
}

void RadialDerivative::apply_d_dr(double const* x, double* out) const
{
    std::size_t const n = size();
    double const c = 1.0 / (12.0 * dx_);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        auto add = [&](std::size_t j, double w) { s += 0.5 * (inv_dr_[i] + inv_dr_[j]) * w * c * x[j]; };
        if (i >= 2) {
            add(i - 2, 1.0);
        }
        if (i >= 1) {
            add(i - 1, -8.0);
        }
        if (i + 1 < n) {
            add(i + 1, 8.0);
        }
        if (i + 2 < n) {
            add(i + 2, -1.0);
        }
        out[i] = s;
    }
}

void RadialDerivative::apply_plus(int L, double const* x, double* out) const
{
    apply_d_dr(x, out);
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] -= (L + 1) * inv_r_[i] * x[i];
    }
}

void RadialDerivative::apply_minus(int L, double const* x, double* out) const
{
    apply_d_dr(x, out);
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] += L * inv_r_[i] * x[i];
    }
}

Extrapolated richardson(double coarse, double fine, double ratio, int order)
{
    Extrapolated e;
    e.coarse = coarse;
    e.fine = fine;
    e.value = fine + (fine - coarse) / (std::pow(ratio, order) - 1.0);
    e.error = std::abs(fine - coarse);
    return e;
}

} // namespace pfqed
