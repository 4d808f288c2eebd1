#include "pfqed/hydrogen.hpp"

#include "pfqed/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pfqed {

namespace {

double laguerre(int k, int a, double x)
{
    if (k < 0) {
        return 0.0;
    }
    return std::assoc_laguerre(static_cast<unsigned>(k), static_cast<unsigned>(a), x);
}

double norm_constant(int n, int l)
{
    double const nn = n;
    double const log_ratio = std::lgamma(n - l) - std::lgamma(n + l + 1);
    return std::sqrt(std::pow(2.0 / nn, 3) / (2.0 * nn) * std::exp(log_ratio));
}

} // namespace

double HydrogenState::R(double r) const
{
    double const rho = 2.0 * r / n;
    return norm_constant(n, l) * std::pow(rho, l) * std::exp(-0.5 * rho) * laguerre(n - l - 1, 2 * l + 1, rho);
}

double HydrogenState::dR(double r) const
{
    double const rho = 2.0 * r / n;
    double const L = laguerre(n - l - 1, 2 * l + 1, rho);
    double const dL = -laguerre(n - l - 2, 2 * l + 2, rho);
    double const e = std::exp(-0.5 * rho);
    double const pl = std::pow(rho, l);
    double d = pl * (dL - 0.5 * L);
    if (l > 0) {
        d += l * std::pow(rho, l - 1) * L;
    }
    return norm_constant(n, l) * (2.0 / n) * e * d;
}

double HydrogenState::density_at_origin() const
{
    if (l != 0) {
        return 0.0;
    }
    double const r0 = R(0.0);
    return std::pow(momentum_unit, 3) * r0 * r0 / (4.0 * std::numbers::pi);
}

double GradientChannels::scaled_norm() const
{
    double s = 0.0;
    for (auto const& c : channels) {
        double q = 0.0;
        for (double v : c.radial) {
            q += v * v;
        }
        s += c.weight * q;
    }
    return s;
}

HydrogenState bound_state(int n, int l, Params const& params, std::shared_ptr<RadialGrid const> grid)
{
    if (n < 1 || l < 0 || l >= n) {
        throw PreconditionError("bound_state: requires n >= 1 and 0 <= l < n");
    }
    if (!grid) {
        throw PreconditionError("bound_state: missing grid");
    }
    params.validate();
    HydrogenState s;
    s.n = n;
    s.l = l;
    double const bz = params.beta_z();
    s.momentum_unit = params.m * bz;
    s.energy_unit = params.m * bz * bz;
    s.scaled_energy = -0.5 / (static_cast<double>(n) * n);
    s.energy = s.scaled_energy * s.energy_unit;
    s.grid = grid;
    s.radial = grid->sample([&](double r) { return r * s.R(r); });
    for (double v : s.radial) {
        s.grid_norm += v * v;
    }
    if (std::abs(s.grid_norm - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "bound_state: grid normalizes state (" << n << "," << l << ") only to " << s.grid_norm;
        throw PreconditionError(os.str());
    }
    return s;
}

GradientChannels gradient_channels(HydrogenState const& state, Params const&)
{
    GradientChannels g;
    g.momentum_unit = state.momentum_unit;
    int const l = state.l;
    double const two_l1 = 2.0 * l + 1.0;
    GridVector up = state.grid->sample([&](double r) { return r * state.dR(r) - l * state.R(r); });
    g.channels.push_back(GradientChannel{l + 1, (l + 1) / two_l1, std::move(up)});
    if (l > 0) {
        GridVector dn = state.grid->sample([&](double r) { return r * state.dR(r) + (l + 1) * state.R(r); });
        g.channels.push_back(GradientChannel{l - 1, l / two_l1, std::move(dn)});
    }
    return g;
}

SumRules sum_rules(HydrogenState const& state, Params const& params)
{
    GradientChannels const g = gradient_channels(state, params);
    double p2 = 0.0;
    double dc = 0.0;
    for (auto const& c : g.channels) {
        RadialOperator const op = build_radial_hamiltonian(c.L, params, state.grid);
        GridVector const hw = op.apply(c.radial, -state.scaled_energy);
        double q = 0.0;
        double e = 0.0;
        for (std::size_t i = 0; i < hw.size(); ++i) {
            q += c.radial[i] * c.radial[i];
            e += c.radial[i] * hw[i];
        }
        p2 += c.weight * q;
        dc += c.weight * e;
    }
    double const k2 = state.momentum_unit * state.momentum_unit;
    return SumRules{k2 * p2, k2 * state.energy_unit * dc};
}

double clebsch_gordan_1(int j1, int m1, int mu, int J)
{
    int const M = m1 + mu;
    if (std::abs(mu) > 1 || std::abs(m1) > j1 || std::abs(M) > J || J < 0) {
        return 0.0;
    }
    double const j = j1;
    double const m = M;
    if (J == j1 + 1) {
        double const den1 = (2 * j + 1) * (2 * j + 2);
        switch (mu) {
        case 1:
            return std::sqrt((j + m) * (j + m + 1) / den1);
        case 0:
            return std::sqrt((j - m + 1) * (j + m + 1) / ((2 * j + 1) * (j + 1)));
        default:
            return std::sqrt((j - m) * (j - m + 1) / den1);
        }
    }
    if (J == j1) {
        if (j1 == 0) {
            return 0.0;
        }
        double const den = 2 * j * (j + 1);
        switch (mu) {
        case 1:
            return -std::sqrt((j + m) * (j - m + 1) / den);
        case 0:
            return m / std::sqrt(j * (j + 1));
        default:
            return std::sqrt((j - m) * (j + m + 1) / den);
        }
    }
    if (J == j1 - 1) {
        double const den = 2 * j * (2 * j + 1);
        switch (mu) {
        case 1:
            return std::sqrt((j - m) * (j - m + 1) / den);
        case 0:
            return -std::sqrt((j - m) * (j + m) / (j * (2 * j + 1)));
        default:
            return std::sqrt((j + m + 1) * (j + m) / den);
        }
    }
    return 0.0;
}

} // namespace pfqed
