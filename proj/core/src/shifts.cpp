#include "pfqed/shifts.hpp"

#include "pfqed/error.hpp"
#include "pfqed/parallel.hpp"
#include "pfqed/quadrature.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pfqed {

using std::numbers::pi;

namespace {

constexpr double four_thirds_pi = 4.0 / (3.0 * pi);

/// The k-dependent factor shared by f and S: k^5/(k^2+k) (1/k^4 + 1/(k^2+k)^2).
double photon_factor(double k)
{
    double const kp = k + 1.0;
    return 1.0 / kp + k * k / (kp * kp * kp);
}

double s_integrand(double e, double k)
{
    return e * photon_factor(k) / (e + k * k + k);
}

} // namespace

double f_function(double e, double Lambda, double tol)
{
    if (!(e >= 0) || !(Lambda >= 0)) {
        throw PreconditionError("f_function: requires e >= 0 and Lambda >= 0");
    }
    if (Lambda == 0.0) {
        return 0.0;
    }
    auto integrand = [e](double k) {
        double const kp = k + 1.0;
        return (k + k * k * k / (kp * kp)) / (e + k * k + k);
    };
    std::vector<double> pts{0.0};
    for (double b = 1.0; b < Lambda; b *= 10.0) {
        pts.push_back(b);
    }
    pts.push_back(Lambda);
    QuadOptions opt{tol, 0.0, 4000};
    return four_thirds_pi * integrate_adaptive(integrand, pts, opt).value;
}

double f_zero_closed(double Lambda)
{
    if (!(Lambda >= 0)) {
        throw PreconditionError("f_zero_closed: requires Lambda >= 0");
    }
    double const lp = Lambda + 1.0;
    return 2.0 * four_thirds_pi * (std::log1p(Lambda) - 0.75 * Lambda * (Lambda + 2.0 / 3.0) / (lp * lp));
}

double s_pole(double e)
{
    if (!(e < 0)) {
        throw PreconditionError("s_pole: requires e < 0");
    }
    // Rationalized form avoids cancellation for small |e|.
    return -2.0 * e / (1.0 + std::sqrt(1.0 - 4.0 * e));
}

double s_function(double e, double tol)
{
    if (!std::isfinite(e)) {
        throw PreconditionError("s_function: argument must be finite");
    }
    if (e == 0.0) {
        return 0.0;
    }
    if (std::abs(1.0 + 4.0 * e) < 1e-8) {
        std::ostringstream os;
        os << "s_function: argument " << e << " lies in the excluded zone |1 + 4e| < 1e-8";
        throw PreconditionError(os.str());
    }
    auto f = [e](double k) { return s_integrand(e, k); };
    if (e > 0) {
        double const ke = 2.0 * e / (1.0 + std::sqrt(1.0 + 4.0 * e));
        std::vector<double> pts{0.1 * ke, 10.0 * ke};
        if (std::abs(ke - 1.0) > 0.5) {
            pts.push_back(1.0);
        }
        QuadOptions opt{tol, 0.0, 4000};
        // Keeps the photon scale k ~ 1 resolvable in the mapped variable.
        double const scale = std::max(ke, 1e-3);
        return four_thirds_pi * integrate_semi_infinite(f, opt, 0.0, scale, pts).value;
    }
    double const kp = s_pole(e);
    QuadOptions opt{tol, tol * std::abs(e), 4000};
    QuadResult const tail = integrate_semi_infinite(f, opt, 2.0 * kp, std::max(kp, 1e-3), {});
    // The window part can nearly cancel; its accuracy is judged against the tail.
    opt.abs_tol = std::max(opt.abs_tol, tol * std::abs(tail.value));
    QuadResult const pv = integrate_principal_value(f, kp, 0.0, 2.0 * kp, opt);
    return four_thirds_pi * (pv.value + tail.value);
}

double bethe_kernel(double e)
{
    if (e == 0.0) {
        return 0.0;
    }
    return four_thirds_pi * e * std::log(1.0 / std::abs(e));
}

double t_bound_constant(double tol)
{
    auto f = [](double k) {
        double const kp = k + 1.0;
        return 1.0 / (kp * kp) + k * k / (kp * kp * kp * kp);
    };
    QuadOptions opt{tol, 0.0, 4000};
    return four_thirds_pi * integrate_semi_infinite(f, opt).value;
}

// ---------------------------------------------------------------------------

RadialContext::RadialContext(Params const& params, GridConfig const& grid)
    : params_(params)
    , grid_(std::make_shared<RadialGrid const>(grid))
    , derivative_(grid_)
{
}

RadialOperator const& RadialContext::op(int L)
{
    auto it = ops_.find(L);
    if (it == ops_.end()) {
        it = ops_.emplace(L, std::make_unique<RadialOperator>(build_radial_hamiltonian(L, params_, grid_))).first;
    }
    return *it->second;
}

SpectralDecomp const& RadialContext::decomp(int L)
{
    auto it = decomps_.find(L);
    if (it == decomps_.end()) {
        it = decomps_.emplace(L, std::make_unique<SpectralDecomp>(eigendecompose(op(L)))).first;
    }
    return *it->second;
}

// ---------------------------------------------------------------------------

namespace {

/// S at an argument inside the excluded zone, interpolated from its edges.
double s_interpolated(double e, double tol)
{
    double const lo = -0.25 - 1e-8;
    double const hi = -0.25 + 1e-8;
    double const slo = s_function(lo - 1e-9, tol);
    double const shi = s_function(hi + 1e-9, tol);
    double const t = (e - (lo - 1e-9)) / (hi - lo + 2e-9);
    return slo + t * (shi - slo);
}

} // namespace

SpectralSumResult s_term(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx,
                         double tol)
{
    Params const& p = ctx.params();
    SpectralSumResult out;
    if (p.alpha == 0.0) {
        return out;
    }
    double const bz = p.beta_z();
    double const sigma = 0.5 * bz * bz;
    double sum = 0.0;
    for (auto const& ch : channels.channels) {
        SpectralDecomp const& d = ctx.decomp(ch.L);
        std::vector<double> const c = d.coefficients(ch.radial);
        std::vector<double> terms(d.count, 0.0);
        std::vector<char> merged(d.count, 0);
        parallel_for(d.count, [&](std::size_t i) {
            double const w = c[i] * c[i];
            if (w == 0.0) {
                return;
            }
            double const e = sigma * (d.eigenvalues[i] - state.scaled_energy);
            double sv;
            if (std::abs(1.0 + 4.0 * e) < 1e-8) {
                sv = s_interpolated(e, tol);
                merged[i] = 1;
            } else {
                sv = s_function(e, tol);
            }
            terms[i] = w * sv;
        });
        double chan = 0.0;
        for (std::size_t i = 0; i < d.count; ++i) {
            chan += terms[i];
            double const e = sigma * (d.eigenvalues[i] - state.scaled_energy);
            if (e < 0.0) {
                out.poles.push_back(PoleRecord{ch.L, d.eigenvalues[i], e, s_pole(e), merged[i] != 0});
            }
        }
        sum += ch.weight * chan;
    }
    out.value = p.alpha * p.m * bz * bz * sum;
    return out;
}

double bethe_shift(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx)
{
    Params const& p = ctx.params();
    if (p.alpha == 0.0) {
        return 0.0;
    }
    double const bz = p.beta_z();
    double const sigma = 0.5 * bz * bz;
    double sum = 0.0;
    for (auto const& ch : channels.channels) {
        SpectralDecomp const& d = ctx.decomp(ch.L);
        double const e_n = state.scaled_energy;
        sum += ch.weight * apply_operator_function(
                               d, [&](double E) { return bethe_kernel(sigma * (E - e_n)); }, ch.radial);
    }
    return p.alpha * p.m * bz * bz * sum;
}

// ---------------------------------------------------------------------------

std::string to_string(TMode mode)
{
    switch (mode) {
    case TMode::bound:
        return "bound";
    case TMode::leading:
        return "leading";
    case TMode::resolvent:
        return "resolvent";
    }
    return "unknown";
}

TMode t_mode_from_string(std::string const& s)
{
    if (s == "bound") {
        return TMode::bound;
    }
    if (s == "leading") {
        return TMode::leading;
    }
    if (s == "resolvent") {
        return TMode::resolvent;
    }
    throw PreconditionError("unknown T-term mode '" + s + "' (expected bound, leading or resolvent)");
}

double t_bound(HydrogenState const& state, Params const& params, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw PreconditionError("t_bound: epsilon must lie in (0, 1)");
    }
    if (state.n != 1) {
        throw PreconditionError("t_bound: the operator bound holds for the ground state only");
    }
    double const bz = params.beta_z();
    double const m = params.m;
    // Sum rules: sum_j <p_j phi|p_j phi> = 2m|e_0| and the double commutator 2 pi beta Z |phi(0)|^2.
    double const e0 = std::abs(state.energy);
    double const p2 = 2.0 * m * e0;
    double const dc = 2.0 * pi * bz * state.density_at_origin();
    double const c = 16.0 / (9.0 * pi);
    return (params.alpha / m) * (2.0 / (epsilon * m)) * c * (dc + e0 * p2 * epsilon / (1.0 - epsilon));
}

TBoundResult t_bound_minimized(HydrogenState const& state, Params const& params)
{
    int const n = 200;
    int best = 1;
    double best_val = t_bound(state, params, 1.0 / n);
    for (int j = 2; j < n; ++j) {
        double const v = t_bound(state, params, static_cast<double>(j) / n);
        if (v < best_val) {
            best_val = v;
            best = j;
        }
    }
    double const lo = static_cast<double>(best - 1) / n;
    double const hi = static_cast<double>(best + 1) / n;
    auto f = [&](double eps) { return t_bound(state, params, std::clamp(eps, 1e-12, 1.0 - 1e-12)); };
    auto const [eps, val] = boost::math::tools::brent_find_minima(f, std::max(lo, 1e-9), std::min(hi, 1.0 - 1e-9), 52);
    return TBoundResult{eps, val};
}

// ---------------------------------------------------------------------------

JensenResult jensen_lower_bound(Params const& params)
{
    params.validate();
    double const bz = params.beta_z();
    JensenResult r;
    double const s = params.alpha == 0.0 ? 0.0 : s_function(bz * bz);
    r.shift = -params.m * params.alpha * bz * bz * s;
    r.bound = 0.5 * params.m * bz * bz + r.shift;
    r.shift_MHz = to_frequency(r.shift, params);
    return r;
}

namespace {

struct LevelValues
{
    double s{0.0};
    double t{0.0};
    double t_quad{0.0};
    double bethe{0.0};
    std::vector<PoleRecord> poles;
};

LevelValues evaluate_on_grid(int n, int l, Params const& params, GridConfig const& grid, LevelConfig const& cfg)
{
    RadialContext ctx(params, grid);
    HydrogenState const state = bound_state(n, l, params, ctx.grid());
    GradientChannels const ch = gradient_channels(state, params);
    LevelValues v;
    SpectralSumResult s = s_term(state, ch, ctx, cfg.tol);
    v.s = s.value;
    v.poles = std::move(s.poles);
    v.bethe = bethe_shift(state, ch, ctx);
    ctx.release_decomps();
    if (cfg.t.mode != TMode::bound) {
        TTermResult const t = t_term(state, ctx, cfg.t);
        v.t = t.value;
        v.t_quad = t.quadrature_error;
    }
    return v;
}

ShiftReport assemble(int n, int l, Params const& params, LevelConfig const& cfg, bool binding)
{
    params.validate();
    if (cfg.t.mode != TMode::leading && n != 1) {
        throw PreconditionError("T-term modes other than 'leading' are available for the ground state only");
    }
    ShiftReport r;
    r.n = n;
    r.l = l;
    r.binding_convention = binding;
    r.t_mode = cfg.t.mode;
    double const bz = params.beta_z();
    r.coulomb_term = 0.5 * params.m * bz * bz / (static_cast<double>(n) * n);

    LevelValues const a = evaluate_on_grid(n, l, params, cfg.grid, cfg);
    r.poles = a.poles;
    if (cfg.extrapolate) {
        GridConfig const fine = cfg.grid.doubled();
        LevelValues const b = evaluate_on_grid(n, l, params, fine, cfg);
        double const ratio = RadialGrid(cfg.grid).step_ratio(RadialGrid(fine));
        Extrapolated const s = richardson(a.s, b.s, ratio);
        Extrapolated const t = richardson(a.t, b.t, ratio);
        Extrapolated const be = richardson(a.bethe, b.bethe, ratio);
        r.s_term = s.value;
        r.s_error = s.error;
        r.t_term = t.value;
        r.t_error = t.error + b.t_quad;
        r.bethe_approx = be.value;
    } else {
        r.s_term = a.s;
        r.t_term = a.t;
        r.t_error = a.t_quad;
        r.bethe_approx = a.bethe;
    }

    if (cfg.t.mode == TMode::bound) {
        HydrogenState const st = bound_state(n, l, params, std::make_shared<RadialGrid const>(cfg.grid));
        r.t_term = params.alpha == 0.0 ? 0.0 : t_bound_minimized(st, params).value;
        r.t_error = 0.0;
    }

    r.convergence_error = r.s_error + r.t_error;
    if (binding) {
        r.total = r.coulomb_term - r.s_term + r.t_term;
        JensenResult const j = jensen_lower_bound(params);
        r.jensen_bound = j.bound;
        r.jensen_shift = j.shift;
    } else {
        r.total = -r.coulomb_term + r.s_term - r.t_term;
    }

    auto mhz = [&](double e) { return to_frequency(e, params); };
    r.in_MHz.coulomb_term = mhz(r.coulomb_term);
    r.in_MHz.s_term = mhz(r.s_term);
    r.in_MHz.t_term = mhz(r.t_term);
    r.in_MHz.total = mhz(r.total);
    r.in_MHz.bethe_approx = mhz(r.bethe_approx);
    r.in_MHz.convergence_error = mhz(r.convergence_error);
    if (r.jensen_bound) {
        r.in_MHz.jensen_bound = mhz(*r.jensen_bound);
        r.in_MHz.jensen_shift = mhz(*r.jensen_shift);
    }
    return r;
}

} // namespace

ShiftReport binding_energy(Params const& params, LevelConfig const& config)
{
    return assemble(1, 0, params, config, true);
}

ShiftReport level_shift(int n, int l, Params const& params, LevelConfig const& config)
{
    if (n < 1 || l < 0 || l >= n) {
        throw PreconditionError("level_shift: requires n >= 1 and 0 <= l < n");
    }
    return assemble(n, l, params, config, false);
}

LambResult lamb_splitting(Params const& params, LevelConfig const& config)
{
    LambResult r;
    r.s2 = level_shift(2, 0, params, config);
    r.p2 = level_shift(2, 1, params, config);
    // The Coulomb parts are identical and are left out rather than subtracted.
    double const rad_s = r.s2.s_term - r.s2.t_term;
    double const rad_p = r.p2.s_term - r.p2.t_term;
    r.energy = rad_s - rad_p;
    r.MHz = to_frequency(r.energy, params);
    r.error_MHz = to_frequency(r.s2.convergence_error + r.p2.convergence_error, params);
    return r;
}

LambResult lamb_splitting_bethe(Params const& params, LevelConfig const& config)
{
    LevelConfig cfg = config;
    cfg.t.mode = TMode::leading;
    LambResult r;
    r.s2 = level_shift(2, 0, params, cfg);
    r.p2 = level_shift(2, 1, params, cfg);
    r.energy = r.s2.bethe_approx - r.p2.bethe_approx;
    r.MHz = to_frequency(r.energy, params);
    return r;
}

} // namespace pfqed
