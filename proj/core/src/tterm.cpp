#include "pfqed/detail/banded.hpp"
#include "pfqed/error.hpp"
#include "pfqed/quadrature.hpp"
#include "pfqed/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>

namespace pfqed {

namespace {

using cplx = std::complex<double>;

double real_part(double x) { return x; }
double real_part(cplx x) { return x.real(); }

/// Coefficient of D+_L in the z-derivative, channel L -> L+1 at magnetic number M.
double coupling_up(int L, int M)
{
    double const num = static_cast<double>((L + 1) * (L + 1) - M * M);
    return num <= 0.0 ? 0.0 : std::sqrt(num / ((2.0 * L + 1.0) * (2.0 * L + 3.0)));
}

/// Coefficient of D-_L in the z-derivative, channel L -> L-1.
double coupling_down(int L, int M)
{
    if (L == 0) {
        return 0.0;
    }
    double const num = static_cast<double>(L * L - M * M);
    return num <= 0.0 ? 0.0 : std::sqrt(num / ((2.0 * L - 1.0) * (2.0 * L + 1.0)));
}

/// Coefficient of channel L = l +/- 1 in d_mu (R_l Y_lm), in units of the
/// corresponding gradient-channel radial function.
double gradient_coefficient(int l, int m, int mu, int L)
{
    int const M = m + mu;
    if (std::abs(M) > L) {
        return 0.0;
    }
    if (L == l + 1) {
        return std::sqrt((l + 1.0) / (2.0 * l + 3.0)) * clebsch_gordan_1(l, m, mu, l + 1);
    }
    if (L == l - 1 && l > 0) {
        return -std::sqrt(l / (2.0 * l - 1.0)) * clebsch_gordan_1(l, m, mu, l - 1);
    }
    return 0.0;
}

template <typename T>
detail::BandLU<T> factor_channel(RadialOperator const& op, T shift)
{
    int const n = static_cast<int>(op.size());
    detail::BandMatrix<T> a(n, 2, 2);
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
    return detail::BandLU<T>(std::move(a));
}

/// out += c * D_L x with D = D+ (up) or D- (down).
template <typename T>
void add_derivative(RadialDerivative const& d, int L, bool up, double c, std::vector<T> const& x, std::vector<T>& out)
{
    long const n = static_cast<long>(x.size());
    for (long i = 0; i < n; ++i) {
        T s = up ? T(-(L + 1) * d.inv_r(i)) * x[i] : T(L * d.inv_r(i)) * x[i];
        for (long j = std::max(0L, i - 2); j <= std::min(n - 1, i + 2); ++j) {
            if (j != i) {
                s += d.d_dr(i, j) * x[j];
            }
        }
        out[i] += c * s;
    }
}

template <typename T>
T bilinear(std::vector<T> const& a, std::vector<T> const& b)
{
    T s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

/// Factorizations of sigma (h_L - e_n) + K for every channel touched by the
/// leading-mode T integrand at one photon momentum.
template <typename T>
class ChannelResolvents
{
  public:
    ChannelResolvents(RadialContext& ctx, T shift)
        : ctx_(ctx)
        , shift_(shift)
    {
    }

    /// (h_L + shift)^{-1} x.
    std::vector<T> solve(int L, std::vector<T> x)
    {
        auto it = lus_.find(L);
        if (it == lus_.end()) {
            it = lus_.emplace(L, factor_channel<T>(ctx_.op(L), shift_)).first;
        }
        it->second.solve_in_place(x.data());
        return x;
    }

  private:
    RadialContext& ctx_;
    T shift_;
    std::map<int, detail::BandLU<T>> lus_;
};

/// Source vectors s = d_z R d_mu phi for one (m, mu), as channel -> grid vector.
template <typename T>
std::map<int, std::vector<T>> source_vectors(HydrogenState const& state, GradientChannels const& channels,
                                              RadialContext& ctx, ChannelResolvents<T>& res, double sigma, int m,
                                              int mu)
{
    int const M = m + mu;
    std::map<int, std::vector<T>> s;
    std::size_t const n = state.radial.size();
    for (auto const& ch : channels.channels) {
        double const c = gradient_coefficient(state.l, m, mu, ch.L);
        if (c == 0.0) {
            continue;
        }
        std::vector<T> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = c * ch.radial[i] / sigma;
        }
        std::vector<T> const w = res.solve(ch.L, std::move(v));
        int const L = ch.L;
        double const up = coupling_up(L, M);
        if (up != 0.0) {
            auto& t = s.try_emplace(L + 1, n, T{}).first->second;
            add_derivative(ctx.derivative(), L, true, up, w, t);
        }
        double const dn = coupling_down(L, M);
        if (dn != 0.0 && L - 1 >= std::abs(M)) {
            auto& t = s.try_emplace(L - 1, n, T{}).first->second;
            add_derivative(ctx.derivative(), L, false, dn, w, t);
        }
    }
    return s;
}

struct XPair
{
    double longitudinal{0.0};
    double transverse{0.0}; ///< x_+ + x_-
};

/// m-averaged <s|R|s> for mu = 0 and the two transverse components, with
/// R = (sigma (h - e_n) + K)^{-1}. The complex shift gives the bilinear
/// (unconjugated) form, whose real part is kept.
template <typename T>
XPair leading_x(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx, double K,
                double eta)
{
    double const bz = ctx.params().beta_z();
    double const sigma = 0.5 * bz * bz;
    T shift;
    if constexpr (std::is_same_v<T, cplx>) {
        shift = cplx(-state.scaled_energy + K / sigma, eta / sigma);
    } else {
        shift = -state.scaled_energy + K / sigma;
    }
    ChannelResolvents<T> res(ctx, shift);
    XPair x;
    int const l = state.l;
    for (int m = -l; m <= l; ++m) {
        // mu = -1 mirrors mu = +1 once m is summed over.
        for (int mu : {0, 1}) {
            auto const s = source_vectors<T>(state, channels, ctx, res, sigma, m, mu);
            T acc{};
            for (auto const& [L, v] : s) {
                acc += bilinear(v, res.solve(L, v)) / sigma;
            }
            double const val = real_part(acc);
            if (mu == 0) {
                x.longitudinal += val;
            } else {
                x.transverse += 2.0 * val;
            }
        }
    }
    x.longitudinal /= 2.0 * l + 1.0;
    x.transverse /= 2.0 * l + 1.0;
    return x;
}

/// <s|M|s> with the Schur-complemented middle inverse
///   M = (A_Z - c^2 G A_Y^{-1} G^T)^{-1} / sigma,
/// solved as one banded system over channels |M| .. l_max with the grid
/// points interleaved. Z is the parity class of s, Y the other one.
double schur_x(std::map<int, std::vector<double>> const& s, RadialContext& ctx, int M, double shift, double c,
               int l_max, double sigma)
{
    int const L0 = std::abs(M);
    int const nb = l_max - L0 + 1;
    if (nb <= 0 || s.empty()) {
        return 0.0;
    }
    int const z_parity = s.begin()->first % 2;
    RadialDerivative const& d = ctx.derivative();
    int const n = static_cast<int>(d.size());
    int const bw = 3 * nb - 1;
    detail::BandMatrix<double> a(n * nb, bw, bw);
    auto idx = [&](int i, int L) { return i * nb + (L - L0); };

    for (int L = L0; L <= l_max; ++L) {
        RadialOperator const& op = ctx.op(L);
        auto const& d0 = op.diag0();
        auto const& d1 = op.diag1();
        auto const& d2 = op.diag2();
        for (int i = 0; i < n; ++i) {
            a(idx(i, L), idx(i, L)) = d0[i] + shift;
            if (i + 1 < n) {
                a(idx(i, L), idx(i + 1, L)) = a(idx(i + 1, L), idx(i, L)) = d1[i];
            }
            if (i + 2 < n) {
                a(idx(i, L), idx(i + 2, L)) = a(idx(i + 2, L), idx(i, L)) = d2[i];
            }
        }
    }
    for (int L = L0; L < l_max; ++L) {
        // G maps the Y channel of the pair (L, L+1) to its Z partner.
        bool const lower_is_y = (L % 2) != z_parity;
        int const src = lower_is_y ? L : L + 1;
        int const dst = lower_is_y ? L + 1 : L;
        double const coef = lower_is_y ? coupling_up(L, M) : coupling_down(L + 1, M);
        if (coef == 0.0) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
                double const g = lower_is_y ? d.plus(src, i, j) : d.minus(src, i, j);
                double const v = c * coef * g;
                a(idx(i, dst), idx(j, src)) = v;
                a(idx(j, src), idx(i, dst)) = v;
            }
        }
    }

    std::vector<double> rhs(static_cast<std::size_t>(n) * nb, 0.0);
    for (auto const& [L, v] : s) {
        if (L > l_max) {
            throw PreconditionError("t_term: l_max is below the channels of the source vector");
        }
        for (int i = 0; i < n; ++i) {
            rhs[idx(i, L)] = v[i];
        }
    }
    std::vector<double> x = rhs;
    detail::BandLU<double> lu(std::move(a));
    lu.solve_in_place(x.data());
    return bilinear(rhs, x) / sigma;
}

XPair resolvent_x(HydrogenState const& state, GradientChannels const& channels, RadialContext& ctx, double k,
                  int l_max)
{
    double const bz = ctx.params().beta_z();
    double const sigma = 0.5 * bz * bz;
    double const K = k * k + k;
    double const shift = -state.scaled_energy + K / sigma;
    ChannelResolvents<double> res(ctx, shift);
    double const c = k * bz / sigma;
    XPair x;
    int const m = 0;
    for (int mu : {0, 1}) {
        auto const s = source_vectors<double>(state, channels, ctx, res, sigma, m, mu);
        double const val = schur_x(s, ctx, m + mu, shift, c, l_max, sigma);
        if (mu == 0) {
            x.longitudinal = val;
        } else {
            x.transverse = 2.0 * val;
        }
    }
    return x;
}

double combine(double k, XPair const& x)
{
    return k * k * k * k *
           (FormFactorWeights::longitudinal(k) * x.longitudinal + FormFactorWeights::transverse(k) * x.transverse);
}

double k_of_K(double K) { return 2.0 * K / (1.0 + std::sqrt(1.0 + 4.0 * K)); }

/// Breakpoints spreading the k range over the atomic scale sigma and the
/// photon scale 1.
std::vector<double> base_breakpoints(double sigma)
{
    std::vector<double> pts;
    for (double e : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
        double const k = k_of_K(sigma * e);
        if (k < 0.5) {
            pts.push_back(k);
        }
    }
    pts.push_back(1.0);
    pts.push_back(10.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<double> pole_breakpoints(HydrogenState const& state, RadialContext& ctx, double sigma, double eta)
{
    std::vector<double> pts;
    for (int L = 0; L <= state.l + 2; ++L) {
        for (double E : ctx.op(L).eigenvalues()) {
            double const K = sigma * (state.scaled_energy - E);
            if (K <= 1e-6 * sigma) {
                break;
            }
            double const kp = k_of_K(K);
            double const w = eta / (2.0 * kp + 1.0);
            for (double f : {-20.0, -4.0, -1.0, 0.0, 1.0, 4.0, 20.0}) {
                double const p = kp + f * w;
                if (p > 0.0) {
                    pts.push_back(p);
                }
            }
        }
    }
    return pts;
}

QuadResult integrate_k(Integrand const& f, std::vector<double> pts, double tol)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadOptions opt{tol, 0.0, 4000};
    return integrate_semi_infinite(f, opt, 0.0, 1.0, pts);
}

} // namespace

double t_integrand(HydrogenState const& state, RadialContext& ctx, double k, TMode mode, int l_max, double eta)
{
    if (!(k > 0.0)) {
        return 0.0;
    }
    GradientChannels const ch = gradient_channels(state, ctx.params());
    double const K = k * k + k;
    switch (mode) {
    case TMode::leading:
        if (eta != 0.0) {
            return combine(k, leading_x<cplx>(state, ch, ctx, K, eta));
        }
        return combine(k, leading_x<double>(state, ch, ctx, K, 0.0));
    case TMode::resolvent:
        if (state.l != 0) {
            throw PreconditionError("t_integrand: resolvent mode needs an s state");
        }
        return combine(k, resolvent_x(state, ch, ctx, k, l_max));
    case TMode::bound:
        break;
    }
    throw PreconditionError("t_integrand: the bound mode has no k integrand");
}

TTermResult t_term(HydrogenState const& state, RadialContext& ctx, TTermOptions const& opt)
{
    Params const& p = ctx.params();
    TTermResult r;
    r.mode = opt.mode;
    if (p.alpha == 0.0) {
        return r;
    }
    if (opt.mode == TMode::bound) {
        r.value = t_bound_minimized(state, p).value;
        return r;
    }
    bool const excited = state.n != 1;
    if (excited && opt.mode != TMode::leading) {
        throw PreconditionError("t_term: excited states support the leading mode only");
    }
    if (opt.mode == TMode::resolvent && opt.l_max < 2) {
        throw PreconditionError("t_term: resolvent mode needs l_max >= 2");
    }

    double const bz = p.beta_z();
    double const sigma = 0.5 * bz * bz;
    double const pref = 2.0 * p.alpha * p.m * std::pow(bz, 4) / std::numbers::pi;
    GradientChannels const ch = gradient_channels(state, p);
    std::vector<double> const base = base_breakpoints(sigma);

    if (opt.mode == TMode::leading && !excited) {
        auto f = [&](double k) { return k > 0.0 ? combine(k, leading_x<double>(state, ch, ctx, k * k + k, 0.0)) : 0.0; };
        QuadResult const q = integrate_k(f, base, opt.tol);
        r.value = pref * q.value;
        r.quadrature_error = pref * q.error_estimate;
        return r;
    }

    if (opt.mode == TMode::leading) {
        // Principal value from the complex shift K + i eta, extrapolated to eta = 0
        // with the three-level combination that removes O(eta) and O(eta^2).
        double const eta0 = opt.eta_rel * sigma;
        double vals[3];
        double qerr = 0.0;
        double const etas[3] = {eta0, 0.5 * eta0, 0.25 * eta0};
        for (int j = 0; j < 3; ++j) {
            double const eta = etas[j];
            auto f = [&](double k) {
                return k > 0.0 ? combine(k, leading_x<cplx>(state, ch, ctx, k * k + k, eta)) : 0.0;
            };
            std::vector<double> pts = base;
            std::vector<double> const poles = pole_breakpoints(state, ctx, sigma, eta);
            pts.insert(pts.end(), poles.begin(), poles.end());
            QuadResult const q = integrate_k(f, pts, opt.tol);
            vals[j] = q.value;
            qerr += q.error_estimate;
        }
        double const t0 = (8.0 * vals[2] - 6.0 * vals[1] + vals[0]) / 3.0;
        r.value = pref * t0;
        r.quadrature_error = pref * (qerr + std::abs(t0 - vals[2]));
        return r;
    }

    auto integrate_at = [&](int l_max) {
        auto f = [&](double k) { return k > 0.0 ? combine(k, resolvent_x(state, ch, ctx, k, l_max)) : 0.0; };
        return integrate_k(f, base, opt.tol);
    };
    QuadResult const a = integrate_at(opt.l_max);
    QuadResult const b = integrate_at(opt.l_max + 1);
    r.value = pref * a.value;
    r.quadrature_error = pref * a.error_estimate;
    r.l_max_change = pref * std::abs(b.value - a.value);
    if (r.l_max_change > opt.l_max_tol * std::abs(r.value)) {
        std::ostringstream os;
        os << "t_term: relative change " << r.l_max_change / std::abs(r.value) << " between l_max = " << opt.l_max
           << " and " << opt.l_max + 1 << " exceeds " << opt.l_max_tol;
        throw ConvergenceError(os.str(), pref * b.value, r.l_max_change);
    }
    return r;
}

} // namespace pfqed
