#include <doctest.h>

#include <pfqed/error.hpp>
#include <pfqed/hydrogen.hpp>
#include <pfqed/shifts.hpp>

#include <cmath>
#include <numbers>

using namespace pfqed;
using std::numbers::pi;

namespace {

Params with_bz(double bz, double alpha = 1.0 / 137.0)
{
    Params p;
    p.beta = bz;
    p.Z = 1.0;
    p.alpha = alpha;
    p.beta_z_limit = 2.0;
    return p;
}

struct Level
{
    Params params;
    RadialContext ctx;
    HydrogenState state;

    Level(Params const& p, int n, int l)
        : params(p)
        , ctx(p, GridConfig{})
        , state(bound_state(n, l, p, ctx.grid()))
    {
    }
};

} // namespace

TEST_CASE("T-term mode names round-trip")
{
    for (TMode m : {TMode::bound, TMode::leading, TMode::resolvent}) {
        CHECK(t_mode_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(t_mode_from_string("exact"), PreconditionError);
}

TEST_CASE("T-term vanishes without coupling")
{
    Level g(with_bz(0.1, 0.0), 1, 0);
    for (TMode m : {TMode::bound, TMode::leading, TMode::resolvent}) {
        TTermOptions opt;
        opt.mode = m;
        CHECK(t_term(g.state, g.ctx, opt).value == 0.0);
    }
}

TEST_CASE("T-term preconditions")
{
    Level g(with_bz(0.1), 1, 0);
    TTermOptions opt;
    opt.mode = TMode::resolvent;
    opt.l_max = 1;
    CHECK_THROWS_AS(t_term(g.state, g.ctx, opt), PreconditionError);
    CHECK_THROWS_AS(t_integrand(g.state, g.ctx, 0.1, TMode::bound, 4), PreconditionError);

    Level e(with_bz(0.1), 2, 0);
    opt.l_max = 4;
    CHECK_THROWS_AS(t_term(e.state, e.ctx, opt), PreconditionError);
    opt.mode = TMode::bound;
    CHECK_THROWS_AS(t_term(e.state, e.ctx, opt), PreconditionError);

    Level p2(with_bz(0.1), 2, 1);
    CHECK_THROWS_AS(t_integrand(p2.state, p2.ctx, 0.1, TMode::resolvent, 4), PreconditionError);
}

TEST_CASE("bound mode returns the minimized bound")
{
    Level g(with_bz(0.1), 1, 0);
    TTermOptions opt;
    opt.mode = TMode::bound;
    auto const r = t_term(g.state, g.ctx, opt);
    CHECK(r.value == t_bound_minimized(g.state, g.params).value);
    CHECK(r.mode == TMode::bound);
}

TEST_CASE("T integrand: leading and resolvent forms")
{
    Level g(with_bz(0.1), 1, 0);
    for (double k : {1e-4, 1e-3, 1e-2, 0.1, 1.0}) {
        double const lead = t_integrand(g.state, g.ctx, k, TMode::leading, 4);
        double const res = t_integrand(g.state, g.ctx, k, TMode::resolvent, 4);
        CHECK(lead > 0.0);
        CHECK(res > 0.0);
        CHECK(std::isfinite(lead));
        CHECK(std::isfinite(res));
    }
    CHECK(t_integrand(g.state, g.ctx, 0.0, TMode::leading, 4) == 0.0);

    // The photon recoil only matters once k is comparable to the atomic scale.
    double prev = 1.0;
    for (double k : {1e-3, 1e-4, 1e-5, 1e-6}) {
        double const lead = t_integrand(g.state, g.ctx, k, TMode::leading, 4);
        double const res = t_integrand(g.state, g.ctx, k, TMode::resolvent, 4);
        double const rel = std::abs(res - lead) / lead;
        CHECK(rel <= prev * 1.01);
        prev = rel;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("leading T-term at small beta Z approaches alpha m (beta Z)^4 / pi")
{
    double const bz = 1e-3;
    Level g(with_bz(bz), 1, 0);
    auto const t = t_term(g.state, g.ctx, TTermOptions{});
    double const limit = g.params.alpha * g.params.m * std::pow(bz, 4) / pi;
    MESSAGE("T / limit at beta Z = 1e-3: " << t.value / limit);
    CHECK(t.value / limit == doctest::Approx(1.0).epsilon(0.01));
    CHECK(t.quadrature_error < 1e-6 * t.value);
}

TEST_CASE("T-term over its small beta Z limit converges as beta Z decreases")
{
    double prev_dev = 0.0;
    for (double bz : {1e-1, 1e-2, 1e-3}) {
        Level g(with_bz(bz), 1, 0);
        double const t = t_term(g.state, g.ctx, TTermOptions{}).value;
        double const ratio = t / (g.params.alpha * g.params.m * std::pow(bz, 4) / pi);
        MESSAGE("beta Z = " << bz << ": T / limit = " << ratio);
        double const dev = std::abs(ratio - 1.0);
        if (prev_dev > 0.0) {
            CHECK(dev < prev_dev);
        }
        prev_dev = dev;
    }
}

TEST_CASE("resolvent mode reports the l_max change and fails on a tight tolerance")
{
    Level g(with_bz(0.3), 1, 0);
    TTermOptions opt;
    opt.mode = TMode::resolvent;
    auto const r = t_term(g.state, g.ctx, opt);
    CHECK(r.value > 0.0);
    CHECK(r.l_max_change <= opt.l_max_tol * r.value);
    CHECK(r.value <= t_bound_minimized(g.state, g.params).value);

    opt.l_max_tol = 1e-14;
    try {
        t_term(g.state, g.ctx, opt);
        FAIL("expected ConvergenceError");
    } catch (ConvergenceError const& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("excited-state leading T-term is finite and small")
{
    Params const p = with_bz(1.0 / 137.0);
    Level s2(p, 2, 0);
    Level p2(p, 2, 1);
    double const ts = t_term(s2.state, s2.ctx, TTermOptions{}).value;
    double const tp = t_term(p2.state, p2.ctx, TTermOptions{}).value;
    CHECK(std::isfinite(ts));
    CHECK(std::isfinite(tp));
    // Compared with the 2s binding energy, the T-term is higher order in alpha.
    double const binding = p.m * p.beta_z() * p.beta_z() / 8.0;
    CHECK(std::abs(ts) < 1e-3 * binding);
    CHECK(std::abs(tp) < 1e-3 * binding);
}
