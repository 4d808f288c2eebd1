#include "pfqed/quadrature.hpp"

#include "pfqed/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace pfqed {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Segment
{
    double a;
    double b;
    double value;
    double error;
    bool splittable;
};

struct ByError
{
    bool operator()(Segment const& x, Segment const& y) const
    {
        if (x.error != y.error) {
            return x.error < y.error;
        }
        return x.a > y.a;
    }
};

double checked(Integrand const& f, double x)
{
    double const y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw PreconditionError(os.str());
    }
    return y;
}

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate.
/// Error scaling follows the QUADPACK qk21 heuristic.
Segment kronrod21(Integrand const& f, double a, double b, std::size_t& evals)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    auto const& xk = kronrod::abscissa();
    auto const& wk = kronrod::weights();
    auto const& wg = gauss::weights();

    double const c = 0.5 * (a + b);
    double const h = 0.5 * (b - a);

    double fv[21];
    fv[0] = checked(f, c);
    for (int i = 1; i < 11; ++i) {
        fv[2 * i - 1] = checked(f, c - h * xk[i]);
        fv[2 * i] = checked(f, c + h * xk[i]);
    }
    evals += 21;

    double rk = wk[0] * fv[0];
    double rg = 0.0;
    double resabs = std::abs(rk);
    for (int i = 1; i < 11; ++i) {
        double const pair = fv[2 * i - 1] + fv[2 * i];
        rk += wk[i] * pair;
        resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 1) {
            rg += wg[(i - 1) / 2] * pair;
        }
    }
    double const mean = 0.5 * rk;
    double resasc = wk[0] * std::abs(fv[0] - mean);
    for (int i = 1; i < 11; ++i) {
        resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
    }

    double const ah = std::abs(h);
    double err = std::abs((rk - rg) * h);
    resabs *= ah;
    resasc *= ah;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }

    Segment s{a, b, rk * h, err, true};
    // Below this width the midpoint no longer separates the endpoints.
    double const width_floor = 100.0 * eps * std::max(std::abs(a), std::abs(b));
    s.splittable = (b - a) > width_floor;
    return s;
}

QuadResult adaptive_driver(Integrand const& f, std::vector<double> const& points, QuadOptions const& opt)
{
    if (points.size() < 2) {
        throw PreconditionError("integrate_adaptive: need at least two breakpoints");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i] > points[i - 1])) {
            throw PreconditionError("integrate_adaptive: breakpoints must be strictly increasing");
        }
    }
    if (!(opt.rel_tol > 0 || opt.abs_tol > 0)) {
        throw PreconditionError("integrate_adaptive: tolerance must be positive");
    }

    QuadResult out;
    std::priority_queue<Segment, std::vector<Segment>, ByError> active;
    std::vector<Segment> settled;

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        Segment s = kronrod21(f, points[i - 1], points[i], out.evaluations);
        total += s.value;
        total_err += s.error;
        (s.splittable ? active.push(s) : settled.push_back(s));
    }

    int subdivisions = 0;
    auto converged = [&] { return total_err <= std::max(opt.rel_tol * std::abs(total), opt.abs_tol); };

    while (!converged() && !active.empty()) {
        if (subdivisions >= opt.max_subdivisions) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge after " << subdivisions
               << " subdivisions (estimate " << total << ", error " << total_err << ")";
            throw ConvergenceError(os.str(), total, total_err);
        }
        Segment s = active.top();
        active.pop();
        double const mid = 0.5 * (s.a + s.b);
        Segment left = kronrod21(f, s.a, mid, out.evaluations);
        Segment right = kronrod21(f, mid, s.b, out.evaluations);
        ++subdivisions;
        total += left.value + right.value - s.value;
        total_err += left.error + right.error - s.error;
        for (Segment const& c : {left, right}) {
            // Panels already at round-off level gain nothing from splitting.
            bool const at_roundoff = c.error <= 50.0 * eps * std::abs(c.value);
            (c.splittable && !at_roundoff ? active.push(c) : settled.push_back(c));
        }
    }

    // Re-sum in interval order so the result does not depend on the queue history.
    while (!active.empty()) {
        settled.push_back(active.top());
        active.pop();
    }
    std::sort(settled.begin(), settled.end(), [](Segment const& x, Segment const& y) { return x.a < y.a; });
    out.value = 0.0;
    out.error_estimate = 0.0;
    for (auto const& s : settled) {
        out.value += s.value;
        out.error_estimate += s.error;
    }
    if (!converged() && out.error_estimate > std::max(opt.rel_tol * std::abs(out.value), opt.abs_tol)) {
        std::ostringstream os;
        os << "adaptive quadrature stalled at round-off level (estimate " << out.value << ", error "
           << out.error_estimate << ")";
        throw ConvergenceError(os.str(), out.value, out.error_estimate);
    }
    return out;
}

QuadOptions single_tol(double tol)
{
    if (!(tol > 0)) {
        throw PreconditionError("quadrature tolerance must be positive");
    }
    return QuadOptions{tol, tol, 2000};
}

} // namespace

QuadResult integrate_adaptive(Integrand const& f, double a, double b, double tol)
{
    return integrate_adaptive(f, a, b, single_tol(tol));
}

QuadResult integrate_adaptive(Integrand const& f, double a, double b, QuadOptions const& opt)
{
    if (!(a < b)) {
        throw PreconditionError("integrate_adaptive: requires a < b");
    }
    return adaptive_driver(f, {a, b}, opt);
}

QuadResult integrate_adaptive(Integrand const& f, std::vector<double> const& breakpoints, QuadOptions const& opt)
{
    return adaptive_driver(f, breakpoints, opt);
}

QuadResult integrate_semi_infinite(Integrand const& f, double tol)
{
    return integrate_semi_infinite(f, single_tol(tol));
}

QuadResult integrate_semi_infinite(Integrand const& f, QuadOptions const& opt, double a, double scale,
                                   std::vector<double> const& breakpoints)
{
    if (!(scale > 0)) {
        throw PreconditionError("integrate_semi_infinite: scale must be positive");
    }
    auto mapped = [&](double t) {
        double const s = 1.0 - t;
        if (s <= 0.0) {
            return 0.0;
        }
        double const k = a + scale * t / s;
        return f(k) * scale / (s * s);
    };
    std::vector<double> pts{0.0};
    for (double k : breakpoints) {
        if (!(k > a)) {
            throw PreconditionError("integrate_semi_infinite: breakpoints must lie above the lower limit");
        }
        double const u = (k - a) / scale;
        pts.push_back(u / (1.0 + u));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(1.0);
    return adaptive_driver(mapped, pts, opt);
}

QuadResult integrate_principal_value(Integrand const& f, double pole, double a, double b, double tol)
{
    return integrate_principal_value(f, pole, a, b, single_tol(tol));
}

QuadResult integrate_principal_value(Integrand const& f, double pole, double a, double b, QuadOptions const& opt)
{
    if (!(a < pole && pole < b)) {
        throw PreconditionError("integrate_principal_value: pole must lie strictly inside (a, b)");
    }
    double const h = 0.5 * std::min({pole - a, b - pole, 1.0});
    // Below u_floor the symmetric sum is dominated by the rounding of the pole
    // location; it is smooth there, so its value at u_floor stands in.
    double const u_floor = 1e-5 * h;
    auto symmetric = [&](double u) {
        u = std::max(u, u_floor);
        return f(pole + u) + f(pole - u);
    };

    // A simple pole leaves f(p+u)+f(p-u) bounded, so u*g(u) shrinks with u.
    // Growth under refinement signals a higher-order singularity.
    double const u1 = 1e-3 * h;
    double const u2 = 1e-5 * h;
    double const q1 = std::abs(u1 * symmetric(u1));
    double const q2 = std::abs(u2 * symmetric(u2));
    // Rounding of pole + u alone makes u * g(u) grow like eps * |pole| / u.
    double const residue_scale = std::abs(u2 * f(pole + u2));
    double const noise = eps * residue_scale * std::max(1.0, std::abs(pole)) / u2;
    if (q2 > 10.0 * q1 && q2 > 1e3 * noise) {
        std::ostringstream os;
        os << "integrate_principal_value: singularity at " << pole << " is not a simple pole";
        throw Error(os.str());
    }

    QuadResult out = integrate_adaptive(symmetric, 0.0, h, opt);
    for (auto [lo, hi] : {std::pair{a, pole - h}, std::pair{pole + h, b}}) {
        if (hi > lo) {
            QuadResult const r = integrate_adaptive(f, lo, hi, opt);
            out.value += r.value;
            out.error_estimate += r.error_estimate;
            out.evaluations += r.evaluations;
        }
    }
    return out;
}

} // namespace pfqed
