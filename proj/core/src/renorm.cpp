#include "pfqed/renorm.hpp"

#include "pfqed/error.hpp"
#include "pfqed/quadrature.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pfqed {

using std::numbers::pi;

double mass_bracket(double m0, double Lambda)
{
    double const L = Lambda / (2.0 * m0);
    return std::log1p(L) - 0.75 * L * (L + 2.0 / 3.0) / ((L + 1.0) * (L + 1.0));
}

double effective_bare_mass(Params const& params)
{
    if (params.m0) {
        return *params.m0;
    }
    return bare_mass(params.m, params.alpha, params.Lambda).m0;
}

double self_energy(Params const& params)
{
    double const m0 = effective_bare_mass(params);
    double const L = params.Lambda / (2.0 * m0);
    return (2.0 * params.alpha / pi) * (params.Lambda - 2.0 * m0 * std::log1p(L));
}

DispersionResult dispersion_shift(std::array<double, 3> const& P, Params const& params, double tol)
{
    double const m0 = effective_bare_mass(params);
    double const p2 = P[0] * P[0] + P[1] * P[1] + P[2] * P[2];
    double const pabs = std::sqrt(p2);
    if (!(pabs < m0)) {
        throw PreconditionError("dispersion_shift: requires |P| < m0");
    }

    DispersionResult out;
    out.P = P;
    out.p2_coefficient = dispersion_p2_coefficient(params);
    out.large_momentum_warning = pabs > 0.5 * m0;

    double const kmax = params.Lambda / (2.0 * m0);
    double const ratio = pabs / m0;
    if (p2 == 0.0 || kmax == 0.0 || params.alpha == 0.0) {
        out.shift = p2 / (2.0 * m0);
        return out;
    }

    // Polar axis along P; the azimuth gives 2 pi and d^3k = 2 pi k^2 dk dc.
    QuadOptions inner_opt{0.1 * tol, 0.0, 2000};
    auto radial = [&](double k) {
        double const kk = k / (k + 1.0);
        auto angular = [&](double c) {
            double const c2 = c * c;
            return ((1.0 - c2) + 2.0 * c2 * kk * kk) / (k + 1.0 - ratio * c);
        };
        return integrate_adaptive(angular, -1.0, 1.0, inner_opt).value;
    };
    QuadOptions outer_opt{tol, 0.0, 2000};
    QuadResult const I = integrate_adaptive(radial, 0.0, kmax, outer_opt);

    double const pref = params.alpha / (2.0 * pi * pi * m0) * 2.0 * pi * p2;
    out.shift = p2 / (2.0 * m0) - pref * I.value;
    out.error_estimate = pref * I.error_estimate;
    return out;
}

double dispersion_p2_coefficient(Params const& params)
{
    double const m0 = effective_bare_mass(params);
    return 1.0 / (2.0 * m0) - 8.0 * params.alpha / (3.0 * pi * m0) * mass_bracket(m0, params.Lambda);
}

MassRenormResult physical_mass(double m0, double alpha, double Lambda)
{
    if (!(m0 > 0) || !(alpha >= 0) || !(Lambda >= 0)) {
        throw PreconditionError("physical_mass: requires m0 > 0, alpha >= 0, Lambda >= 0");
    }
    MassRenormResult r;
    r.m0 = m0;
    r.alpha = alpha;
    r.Lambda = Lambda;
    r.m = m0 * (1.0 + alpha * 16.0 / (3.0 * pi) * mass_bracket(m0, Lambda));
    return r;
}

MassRenormResult bare_mass(double m, double alpha, double Lambda, double tol)
{
    if (!(m > 0) || !(alpha >= 0) || !(Lambda >= 0) || !(tol > 0)) {
        throw PreconditionError("bare_mass: requires m > 0, alpha >= 0, Lambda >= 0, tol > 0");
    }
    MassRenormResult r;
    r.m = m;
    r.alpha = alpha;
    r.Lambda = Lambda;
    if (alpha == 0.0 || Lambda == 0.0) {
        r.m0 = m;
        return r;
    }

    auto g = [&](double m0) { return physical_mass(m0, alpha, Lambda).m - m; };
    double hi = m;
    double ghi = g(hi);
    double lo = 0.5 * m;
    double glo = g(lo);
    while (glo > 0.0) {
        hi = lo;
        ghi = glo;
        lo *= 0.5;
        if (lo < 1e-300) {
            throw ConvergenceError("bare_mass: could not bracket the root", lo, hi - lo);
        }
        glo = g(lo);
    }
    if (ghi == 0.0) {
        r.m0 = hi;
        return r;
    }

    std::uintmax_t max_iter = 200;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol * std::max(std::abs(a), std::abs(b)); };
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, stop, max_iter);
    r.iterations = static_cast<std::size_t>(max_iter);
    if (max_iter >= 200 && !stop(a, b)) {
        throw ConvergenceError("bare_mass: root finder hit its iteration cap", 0.5 * (a + b), b - a);
    }
    // Report the endpoint with the smaller residual.
    double const ra = g(a);
    double const rb = g(b);
    r.m0 = std::abs(ra) <= std::abs(rb) ? a : b;
    r.residual = std::min(std::abs(ra), std::abs(rb));
    return r;
}

double dipole_mass(double m0, double alpha, double Lambda)
{
    return m0 + 4.0 * alpha / (3.0 * pi) * Lambda;
}

} // namespace pfqed
