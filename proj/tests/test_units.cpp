#include <doctest.h>

#include <pfqed/error.hpp>
#include <pfqed/units.hpp>

using namespace pfqed;

TEST_CASE("to_frequency is a product of the two constants")
{
    Params p;
    CHECK(to_frequency(0.0, p) == 0.0);
    // 510998.95 eV * 2.417989e8 MHz/eV, multiplied out by hand.
    CHECK(to_frequency(1.0, p) == doctest::Approx(1.23558984011155e14).epsilon(1e-13));
    CHECK(to_frequency(-1.0, p) == -to_frequency(1.0, p));
}

TEST_CASE("to_frequency is linear and strictly increasing")
{
    Params p;
    double prev = to_frequency(-1e-3, p);
    for (double x = -1e-3; x <= 1e-3; x += 1.7e-5) {
        CHECK(to_frequency(2.0 * x, p) == doctest::Approx(2.0 * to_frequency(x, p)).epsilon(1e-15));
        if (x > -1e-3) {
            CHECK(to_frequency(x, p) > prev);
        }
        prev = to_frequency(x, p);
    }
}

TEST_CASE("constants can be overridden")
{
    Params p;
    p.constants.rest_energy_eV = 2.0;
    p.constants.eV_to_MHz = 3.0;
    CHECK(to_frequency(0.5, p) == doctest::Approx(3.0));
}

TEST_CASE("rydberg")
{
    Params p;
    p.beta = 1.0;
    p.beta_z_limit = 2.0;
    CHECK(rydberg(p) == doctest::Approx(0.5));

    p.beta = 1.0 / 137.0;
    CHECK(rydberg(p) == doctest::Approx(0.5 / (137.0 * 137.0)).epsilon(1e-15));
    CHECK(rydberg(p) == doctest::Approx(2.6640e-5).epsilon(1e-4));

    double const r1 = rydberg(p);
    p.Z = 2.0;
    CHECK(rydberg(p) == doctest::Approx(4.0 * r1).epsilon(1e-15));
}

TEST_CASE("parameter validation names the field")
{
    Params p;
    CHECK_NOTHROW(p.validate());

    auto message = [](Params const& q) {
        try {
            q.validate();
        } catch (PreconditionError const& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    Params q = p;
    q.m = 0.0;
    CHECK(message(q).find("m must") != std::string::npos);
    q = p;
    q.alpha = -1.0;
    CHECK(message(q).find("alpha must") != std::string::npos);
    q = p;
    q.Z = 0.0;
    CHECK(message(q).find("Z must") != std::string::npos);
    q = p;
    q.Lambda = -1.0;
    CHECK(message(q).find("Lambda must") != std::string::npos);
    q = p;
    q.m0 = -0.5;
    CHECK(message(q).find("m0 must") != std::string::npos);
}

TEST_CASE("beta Z at or above the validity limit is rejected")
{
    Params p;
    p.beta = 1.0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    p.beta_z_limit = 1.5;
    CHECK_NOTHROW(p.validate());
    p.Z = 2.0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
}
