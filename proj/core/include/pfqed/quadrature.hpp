#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pfqed {

using Integrand = std::function<double(double)>;

struct QuadResult
{
    double value{0.0};
    double error_estimate{0.0};
    std::size_t evaluations{0};
};

/// Accuracy target: the driver stops once the summed error estimate is below
/// max(rel_tol * |value|, abs_tol).
struct QuadOptions
{
    double rel_tol{1e-10};
    double abs_tol{1e-10};
    int max_subdivisions{2000};
};

/// Global adaptive Gauss-Kronrod (10/21 point) quadrature on [a, b].
/// The single-tolerance overload uses tol for both the relative and absolute target.
QuadResult integrate_adaptive(Integrand const& f, double a, double b, double tol);
QuadResult integrate_adaptive(Integrand const& f, double a, double b, QuadOptions const& opt);

/// Same driver seeded with the intervals between consecutive breakpoints.
/// Use it to put kinks or narrow features on interval boundaries.
QuadResult integrate_adaptive(Integrand const& f, std::vector<double> const& breakpoints, QuadOptions const& opt);

/// Integral over [a, inf) after the change of variables k = a + scale * t / (1 - t).
/// Breakpoints (in k, all > a) are carried through the map.
QuadResult integrate_semi_infinite(Integrand const& f, double tol);
QuadResult integrate_semi_infinite(Integrand const& f, QuadOptions const& opt, double a = 0.0, double scale = 1.0,
                                   std::vector<double> const& breakpoints = {});

/// Cauchy principal value of f over [a, b] with a simple pole at `pole`.
/// A window of half-width min(pole - a, b - pole, 1) / 2 is integrated as
/// f(pole + u) + f(pole - u); the rest is integrated normally.
QuadResult integrate_principal_value(Integrand const& f, double pole, double a, double b, double tol);
QuadResult integrate_principal_value(Integrand const& f, double pole, double a, double b, QuadOptions const& opt);

} // namespace pfqed
