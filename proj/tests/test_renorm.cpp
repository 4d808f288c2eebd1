#include <doctest.h>

#include <pfqed/error.hpp>
#include <pfqed/renorm.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace pfqed;
using std::numbers::pi;

namespace {

Params free_params(double m0, double alpha, double Lambda)
{
    Params p;
    p.m0 = m0;
    p.alpha = alpha;
    p.Lambda = Lambda;
    return p;
}

double tanh_sinh(auto const& f, double a, double b)
{
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b, 1e-14);
}

/// P-dependent part of the dispersion integral with the angular integral
/// done in closed form:
///   int_{-1}^{1} (1 - c^2 + 2 q c^2) / (A - r c) dc = I0 + (2q - 1) I2
/// with I0 = ln((A + r)/(A - r)) / r and I2 = (A^2 I0 - 2A) / r^2.
double dispersion_oracle(double m0, double alpha, double Lambda, double P)
{
    double const r = P / m0;
    auto radial = [r](double k) {
        long double const A = k + 1.0L;
        long double const rr = r;
        long double const I0 = std::log((A + rr) / (A - rr)) / rr;
        long double const I2 = (A * A * I0 - 2.0L * A) / (rr * rr);
        long double const q = (k / (k + 1.0L)) * (k / (k + 1.0L));
        return static_cast<double>(I0 + (2.0L * q - 1.0L) * I2);
    };
    double const I = tanh_sinh(radial, 0.0, Lambda / (2.0 * m0));
    return P * P / (2.0 * m0) - alpha / (2.0 * pi * pi * m0) * 2.0 * pi * P * P * I;
}

} // namespace

TEST_CASE("self-energy")
{
    CHECK(self_energy(free_params(0.5, 0.0, 10.0)) == 0.0);
    CHECK(self_energy(free_params(0.5, 1.0, 0.0)) == 0.0);
    CHECK(std::abs(self_energy(free_params(0.5, 1.0, 1e-12))) < 1e-20);

    double const hand = (2.0 / pi) * (1.0 - std::log(2.0));
    CHECK(self_energy(free_params(0.5, 1.0, 1.0)) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(hand == doctest::Approx(0.19535).epsilon(1e-4));

    // Vacuum integral (2 alpha / pi) int_0^Lambda k / (k + 2 m0) dk.
    for (double m0 : {0.25, 0.5, 2.0}) {
        for (double L : {0.3, 1.0, 50.0}) {
            double const q = (2.0 * 0.3 / pi) * tanh_sinh([m0](double k) { return k / (k + 2.0 * m0); }, 0.0, L);
            CHECK(self_energy(free_params(m0, 0.3, L)) == doctest::Approx(q).epsilon(1e-12));
        }
    }
}

TEST_CASE("self-energy derives m0 from m when absent")
{
    Params p;
    p.alpha = 0.01;
    p.Lambda = 5.0;
    double const m0 = bare_mass(p.m, p.alpha, p.Lambda).m0;
    CHECK(self_energy(p) == doctest::Approx(self_energy(free_params(m0, 0.01, 5.0))).epsilon(1e-15));
}

TEST_CASE("dispersion shift at zero momentum is exactly zero")
{
    auto const r = dispersion_shift({0.0, 0.0, 0.0}, free_params(1.0, 0.1, 10.0));
    CHECK(r.shift == 0.0);
}

TEST_CASE("dispersion shift is even and rotation invariant")
{
    Params const p = free_params(1.0, 0.05, 20.0);
    double const a = dispersion_shift({0.0, 0.0, 0.2}, p).shift;
    CHECK(dispersion_shift({0.0, 0.0, -0.2}, p).shift == doctest::Approx(a).epsilon(1e-12));
    double const c = 0.2 / std::sqrt(3.0);
    CHECK(dispersion_shift({c, -c, c}, p).shift == doctest::Approx(a).epsilon(1e-12));
    CHECK(dispersion_shift({0.2, 0.0, 0.0}, p).shift == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("dispersion shift matches a closed-form angular integral")
{
    for (double P : {0.05, 0.2, 0.6}) {
        Params const p = free_params(0.5, 0.01, 3.0);
        double const oracle = dispersion_oracle(0.5, 0.01, 3.0, P * 0.5);
        CHECK(dispersion_shift({0.0, 0.0, P * 0.5}, p).shift == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("small-momentum dispersion approaches the closed-form coefficient")
{
    Params const p = free_params(1.0, 1.0 / 137.0, 10.0);
    double const coef = dispersion_p2_coefficient(p);
    double prev = 1.0;
    for (double P : {0.1, 0.05, 0.02}) {
        auto const r = dispersion_shift({0.0, 0.0, P}, p);
        CHECK(r.p2_coefficient == coef);
        double const rel = std::abs(r.shift / (P * P) - coef) / coef;
        CHECK(rel < 1e-4);
        CHECK(rel < prev);
        prev = rel;
    }
}

TEST_CASE("dispersion preconditions and warning")
{
    Params const p = free_params(1.0, 0.01, 10.0);
    CHECK_THROWS_AS(dispersion_shift({0.0, 0.0, 1.0}, p), PreconditionError);
    CHECK_THROWS_AS(dispersion_shift({0.0, 0.8, 0.8}, p), PreconditionError);
    CHECK_FALSE(dispersion_shift({0.0, 0.0, 0.4}, p).large_momentum_warning);
    CHECK(dispersion_shift({0.0, 0.0, 0.6}, p).large_momentum_warning);
}

TEST_CASE("p2 coefficient")
{
    CHECK(dispersion_p2_coefficient(free_params(0.7, 0.0, 10.0)) == doctest::Approx(1.0 / 1.4).epsilon(1e-15));
    CHECK(dispersion_p2_coefficient(free_params(0.7, 0.3, 0.0)) == doctest::Approx(1.0 / 1.4).epsilon(1e-15));

    // P.k dropped: the angular integral of (1 - c^2 + 2 q c^2)/(k + 1) is (4/3)(1 + q)/(k + 1).
    double const m0 = 0.5, alpha = 0.01, Lambda = 1.0;
    double const I = tanh_sinh(
        [](double k) {
            double const q = (k / (k + 1.0)) * (k / (k + 1.0));
            return (4.0 / 3.0) * (1.0 + q) / (k + 1.0);
        },
        0.0, Lambda / (2.0 * m0));
    double const oracle = 1.0 / (2.0 * m0) - alpha / (2.0 * pi * pi * m0) * 2.0 * pi * I;
    CHECK(dispersion_p2_coefficient(free_params(m0, alpha, Lambda)) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("p2 coefficient is 1/(2m) at leading order")
{
    double const m0 = 1.0, alpha = 1e-4, Lambda = 10.0;
    double const m = physical_mass(m0, alpha, Lambda).m;
    double const coef = dispersion_p2_coefficient(free_params(m0, alpha, Lambda));
    // The two differ at second order in alpha.
    CHECK(std::abs(coef - 0.5 / m) < 10.0 * alpha * alpha);
}

TEST_CASE("physical mass")
{
    CHECK(physical_mass(0.7, 0.0, 10.0).m == 0.7);
    CHECK(physical_mass(0.7, 0.3, 0.0).m == 0.7);
    CHECK(physical_mass(0.7, 0.3, 10.0).residual == 0.0);

    double const hand = 1.0 + 16.0 / (3.0 * 137.0 * pi) * (std::log(2.0) - 0.75 * 2.0 * (10.0 / 3.0) / 16.0);
    CHECK(physical_mass(1.0, 1.0 / 137.0, 2.0).m == doctest::Approx(hand).epsilon(1e-15));

    CHECK_THROWS_AS(physical_mass(0.0, 0.1, 1.0), PreconditionError);
    CHECK_THROWS_AS(physical_mass(1.0, -0.1, 1.0), PreconditionError);
}

TEST_CASE("physical mass is strictly increasing in alpha and Lambda")
{
    for (double m0 : {0.2, 1.0, 3.0}) {
        double prev = physical_mass(m0, 0.001, 5.0).m;
        CHECK(prev > m0);
        for (double a = 0.002; a < 1.0; a *= 1.7) {
            double const m = physical_mass(m0, a, 5.0).m;
            CHECK(m > prev);
            prev = m;
        }
        prev = physical_mass(m0, 0.01, 0.01).m;
        CHECK(prev > m0);
        for (double L = 0.02; L < 1e6; L *= 2.3) {
            double const m = physical_mass(m0, 0.01, L).m;
            CHECK(m > prev);
            prev = m;
        }
    }
}

TEST_CASE("physical mass scaling covariance")
{
    for (double s : {0.1, 2.0, 37.0}) {
        for (double L : {0.5, 10.0, 1000.0}) {
            double const base = physical_mass(0.8, 0.02, L).m;
            CHECK(physical_mass(s * 0.8, 0.02, s * L).m == doctest::Approx(s * base).epsilon(1e-14));
        }
    }
}

TEST_CASE("bare mass")
{
    CHECK(bare_mass(1.3, 0.0, 10.0).m0 == 1.3);
    auto const r = bare_mass(1.0, 1.0 / 137.0, 100.0);
    CHECK(r.m0 < 1.0);
    CHECK(r.m0 > 0.0);
    CHECK(r.residual < 1e-14);
    CHECK_THROWS_AS(bare_mass(0.0, 0.1, 1.0), PreconditionError);
}

TEST_CASE("bare mass inverts physical mass over the stated grid")
{
    double const tol = 1e-15;
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
        for (double a : {0.001, 0.01, 1.0 / 137.0}) {
            for (double L : {0.5, 1.0, 10.0, 100.0}) {
                double const m = physical_mass(x, a, L).m;
                double const back = bare_mass(m, a, L, tol).m0;
                CHECK(std::abs(back - x) <= 10.0 * tol * x + 4e-16 * x);
            }
        }
    }
}

TEST_CASE("dipole mass")
{
    CHECK(dipole_mass(0.9, 0.0, 4.0) == 0.9);
    CHECK(dipole_mass(1.0, 3.0 * pi / 4.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("dipole and full mass differ at second order in the cutoff")
{
    double const m0 = 1.0, alpha = 0.05;
    double const d2 = dipole_mass(m0, alpha, 1e-2) - physical_mass(m0, alpha, 1e-2).m;
    double const d3 = dipole_mass(m0, alpha, 1e-3) - physical_mass(m0, alpha, 1e-3).m;
    CHECK(d2 > 0.0);
    CHECK(d3 > 0.0);
    // Taylor expansion of the bracket: the difference is (4 alpha / 3 pi) Lambda^2 / (4 m0) + O(Lambda^3).
    CHECK(d2 / d3 == doctest::Approx(100.0).epsilon(0.02));
    CHECK(d3 == doctest::Approx(4.0 * alpha / (3.0 * pi) * 1e-6 / (4.0 * m0)).epsilon(0.01));
}
