#pragma once
// Turning-point geometry for the Legendre equation with f(z) = (z^2-a^2)/(1-z^2)^2:
// parameters, the Liouville-Green variable xi, the comparison variable zeta
// solving
//     xi = zeta S/2 - (alpha^2/2) ln(zeta + S) + (alpha^2/2) ln(alpha),
//     S  = (zeta-alpha)^{1/2} (zeta+alpha)^{1/2},
// and the rational variables beta = 1/(X (z+X)), betahat = 1/(S (zeta+S)),
// X = (z-a)^{1/2} (z+a)^{1/2}.

#include "numerics.hpp"

#include <memory>
#include <optional>

namespace ferrers {

// Side of a branch cut from which a real point is approached.
enum class Side { none, upper, lower };

// Power series sum_{m>=0} c[m] (z - center)^m with a control radius.
struct PowerSeries {
    Real center;
    Real radius;             // largest |z - center| at which the series is used
    std::vector<Real> c;

    template <class S>
    S eval(const S& z) const {
        S t = z - center, r = S(0);
        for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) r = r * t + c[m];
        return r;
    }
    // (series - c[0] - ... - c[k-1]) / (z - center)^k
    template <class S>
    S eval_tail(const S& z, int k) const {
        S t = z - center, r = S(0);
        for (int m = static_cast<int>(c.size()) - 1; m >= k; --m) r = r * t + c[m];
        return r;
    }
    // d/dz of eval_tail(z, k)
    template <class S>
    S eval_tail_derivative(const S& z, int k) const {
        S t = z - center, r = S(0);
        for (int m = static_cast<int>(c.size()) - 1; m >= k + 1; --m) r = r * t + c[m] * (m - k);
        return r;
    }
    template <class S>
    S eval_derivative(const S& z) const {
        S t = z - center, r = S(0);
        for (int m = static_cast<int>(c.size()) - 1; m >= 1; --m) r = r * t + c[m] * m;
        return r;
    }
};

struct GeomConfig {
    // |z -+ a| below this routes zeta to its Taylor series about the turning point
    double taylor_switch = 0.08;
};

struct Params {
    Real nu, mu, u, a, a2, alpha, alpha2, b;  // b = mu - nu - 1/2 = -u alpha^2/2
    GeomConfig cfg;
    Real taylor_radius;  // effective switch radius, at most (1-a)/2
    std::shared_ptr<const PowerSeries> series_tp;      // zeta about z = a
    std::shared_ptr<const PowerSeries> series_origin;  // zeta about z = 0
};

// ------------------------------------------------------------------ alpha

inline Real alpha_from_a(const Real& a) {
    if (a < 0 || !(a < 1)) throw DomainError("alpha_from_a: need 0 <= a < 1");
    // alpha^2 = 2(1 - sqrt(1-a^2)) = 2a^2/(1 + sqrt(1-a^2)), free of cancellation
    return sqrt(2 * a * a / (1 + sqrt(1 - a * a)));
}

namespace detail {

// Power series of f(a + t) = t(2a + t) / ((1-a^2) - 2a t - t^2)^2.
inline std::vector<Real> f_series_at_a(const Real& a, int n) {
    std::vector<Real> D(n + 1, Real(0)), inv(n + 1, Real(0)), inv2(n + 1, Real(0)), out(n + 1, Real(0));
    D[0] = 1 - a * a;
    if (n >= 1) D[1] = -2 * a;
    if (n >= 2) D[2] = Real(-1);
    inv[0] = 1 / D[0];
    for (int k = 1; k <= n; ++k) {
        Real s = 0;
        for (int j = 1; j <= std::min(k, 2); ++j) s += D[j] * inv[k - j];
        inv[k] = -s / D[0];
    }
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= k; ++j) inv2[k] += inv[j] * inv[k - j];
    for (int k = 1; k <= n; ++k) out[k] = 2 * a * inv2[k - 1] + (k >= 2 ? inv2[k - 2] : Real(0));
    return out;
}

// Power series of f(z) = (z^2 - a^2)/(1 - z^2)^2 about 0.
inline std::vector<Real> f_series_at_0(const Real& a, int n) {
    std::vector<Real> out(n + 1, Real(0));
    // 1/(1-w)^2 = sum (k+1) w^k, w = z^2
    for (int k = 0; 2 * k <= n; ++k) {
        out[2 * k] -= a * a * (k + 1);
        if (2 * k + 2 <= n) out[2 * k + 2] += Real(k + 1);
    }
    return out;
}

// Taylor coefficients of zeta about z = a from (zeta^2 - alpha^2) zeta'^2 = f,
// written for s = zeta - alpha as s (2 alpha + s) s'^2 = f(a + t).
inline std::vector<Real> zeta_coeffs_at_a(const Real& a, const Real& alpha, int n) {
    std::vector<Real> f = f_series_at_a(a, n);
    std::vector<Real> c(n + 1, Real(0)), P(n + 1, Real(0)), Q(n + 1, Real(0));
    c[0] = alpha;
    c[1] = cbrt(f[1] / (2 * alpha));
    P[1] = 2 * alpha * c[1];
    Q[0] = c[1] * c[1];
    for (int m = 2; m <= n; ++m) {
        Real Pp = 0, Qp = 0, mid = 0;
        for (int k = 1; k <= m - 1; ++k) Pp += c[k] * c[m - k];
        for (int k = 1; k <= m - 2; ++k) Qp += c[k + 1] * (k + 1) * c[m - k] * (m - k);
        for (int i = 2; i <= m - 1; ++i) mid += P[i] * Q[m - i];
        Real rhs = f[m] - mid - Pp * Q[0] - P[1] * Qp;
        c[m] = rhs / (2 * alpha * c[1] * c[1] * (1 + 2 * m));
        P[m] = 2 * alpha * c[m] + Pp;
        Q[m - 1] = Qp + 2 * c[1] * c[m] * m;
    }
    return c;
}

// Odd Taylor series of zeta about z = 0 for a > 0.
inline std::vector<Real> zeta_coeffs_at_0(const Real& a, const Real& alpha, int n) {
    std::vector<Real> f = f_series_at_0(a, n);
    std::vector<Real> b(n + 1, Real(0)), P(n + 1, Real(0)), Q(n + 1, Real(0));
    const Real A = alpha * alpha;
    b[1] = a / alpha;
    P[0] = -A;
    Q[0] = b[1] * b[1];
    // unknown b_m enters at order m-1 through Q_{m-1} = 2 m b_1 b_m + ...
    for (int m = 2; m <= n; ++m) {
        int o = m - 1;
        Real Qp = 0;
        for (int i = 1; i <= o - 1; ++i) Qp += b[i + 1] * (i + 1) * b[o - i + 1] * (o - i + 1);
        Real mid = 0;
        for (int i = 1; i <= o; ++i) mid += P[i] * Q[o - i];
        b[m] = (f[o] - mid - P[0] * Qp) / (P[0] * 2 * m * b[1]);
        Q[o] = Qp + 2 * m * b[1] * b[m];
        Real Pm = 0;
        for (int i = 0; i <= m; ++i) Pm += b[i] * b[m - i];
        P[m] = Pm;
        if (m - 1 >= 1) {
            Real Pm1 = 0;
            for (int i = 0; i <= m - 1; ++i) Pm1 += b[i] * b[m - 1 - i];
            P[m - 1] = Pm1;
        }
    }
    return b;
}

// a = 0: zeta = z (-ln(1-z^2)/z^2)^{1/2}, with -ln(1-w)/w = sum w^k/(k+1).
inline std::vector<Real> zeta_coeffs_coalesced(int n) {
    int m = n / 2 + 1;
    std::vector<Real> g(m + 1), h(m + 1, Real(0));
    for (int k = 0; k <= m; ++k) g[k] = Real(1) / (k + 1);
    h[0] = 1;  // h = sqrt(g), h^2 = g
    for (int k = 1; k <= m; ++k) {
        Real s = g[k];
        for (int j = 1; j <= k - 1; ++j) s -= h[j] * h[k - j];
        h[k] = s / 2;
    }
    std::vector<Real> c(n + 1, Real(0));
    for (int k = 0; 2 * k + 1 <= n; ++k) c[2 * k + 1] = h[k];
    return c;
}

inline int series_terms(int digits, const Real& ratio) {
    double r = ratio.to_double();
    int n = static_cast<int>(std::ceil((digits + 5) / std::log10(r))) + 4;
    return std::max(n, 12);
}

}  // namespace detail

// Working digits used for series coefficients: the recursions divide by alpha
// at every order, so small alpha costs about log10(1/alpha) digits per term.
inline int series_guard_digits(const Real& alpha, int terms) {
    double la = alpha.is_zero() ? 0.0 : std::max(0.0, -std::log10(alpha.to_double()) + 0.5);
    return 10 + static_cast<int>(std::ceil(la * terms));
}

inline Params make_params(const Real& nu, const Real& a, GeomConfig cfg = {}) {
    if (nu < 0) throw DomainError("nu must be nonnegative");
    if (a < 0 || !(a < 1)) throw DomainError("a must lie in [0, 1)");
    Params p;
    p.nu = nu;
    p.a = a;
    p.a2 = a * a;
    p.u = nu + Real(0.5);
    p.alpha = alpha_from_a(a);
    p.alpha2 = 2 * p.a2 / (1 + sqrt(1 - p.a2));
    p.mu = sqrt(1 - p.a2) * p.u;
    p.b = -p.u * p.alpha2 / 2;
    p.cfg = cfg;
    p.taylor_radius = min(Real(cfg.taylor_switch), (1 - a) / 2);

    const int digits = working_digits() + 10;
    // Series about a must reach the taylor radius; series about 0 is used up to half its radius.
    Real rad_tp = p.taylor_radius;
    int n_tp = detail::series_terms(digits, (1 - a) / rad_tp);
    if (a.is_zero()) {
        int n0 = detail::series_terms(digits, Real(1) / Real(0.5));
        auto s = std::make_shared<PowerSeries>();
        s->center = 0;
        s->radius = Real(0.5);
        s->c = detail::zeta_coeffs_coalesced(2 * n0 + 1);
        p.series_origin = s;
        auto t = std::make_shared<PowerSeries>(*s);
        t->radius = rad_tp;
        p.series_tp = t;
        return p;
    }
    {
        std::vector<Real> c;
        {
            PrecisionScope guard(digits + series_guard_digits(p.alpha, n_tp));
            c = detail::zeta_coeffs_at_a(a, p.alpha, n_tp);
        }
        auto s = std::make_shared<PowerSeries>();
        s->center = a;
        s->radius = rad_tp;
        for (auto& v : c) s->c.push_back(v.rounded());
        p.series_tp = s;
    }
    {
        Real rad0 = min(a, Real(1)) / 2;
        int n0 = detail::series_terms(digits, Real(2));
        std::vector<Real> c;
        {
            PrecisionScope guard(digits + series_guard_digits(p.alpha * p.alpha, n0));
            c = detail::zeta_coeffs_at_0(a, p.alpha, n0);
        }
        auto s = std::make_shared<PowerSeries>();
        s->center = 0;
        s->radius = rad0;
        for (auto& v : c) s->c.push_back(v.rounded());
        p.series_origin = s;
    }
    return p;
}

inline Params make_params_mu(const Real& nu, const Real& mu, GeomConfig cfg = {}) {
    Real u = nu + Real(0.5);
    if (mu < 0 || mu > u) throw DomainError("mu must lie in [0, nu + 1/2]");
    Real a = sqrt(1 - (mu / u) * (mu / u));
    Params p = make_params(nu, a, cfg);
    p.mu = mu;
    return p;
}

// ------------------------------------------------------------------ xi

// Real-line value for a <= x < 1.
inline Real xi_real_right(const Real& a, const Real& x) {
    if (a.is_zero()) return -log1p(-x * x) / 2;
    if (x == a) return Real(0);
    Real c = sqrt(1 - a * a);
    return c * atanh(sqrt((x - a) * (x + a) / (1 - a * a)) / x) - acosh(x / a);
}

// For -a < x < a: eta(x) = arcsin(x/a) - c arctan(x c / sqrt(a^2 - x^2)), so
// that xi(x +- i0) = +-i (eta(x) - pi alpha^2 / 4).
inline Real eta_inner(const Real& a, const Real& x) {
    Real c = sqrt(1 - a * a);
    return asin(x / a) - c * atan(x * c / sqrt((a - x) * (a + x)));
}

inline CReal xi(const Params& p, const CReal& z, Side side = Side::none) {
    const Real& a = p.a;
    if (z.im.is_zero()) {
        const Real& x = z.re;
        if (x >= 1 || x <= -1) throw DomainError("xi: z on the cut |x| >= 1");
        if (a.is_zero()) return CReal(-log1p(-x * x) / 2);
        if (x >= a) return CReal(xi_real_right(a, x));
        if (side == Side::none) throw BranchError("xi: z on the cut (-inf, a] needs a side");
        Real sgn = side == Side::upper ? Real(1) : Real(-1);
        Real qa = const_pi() * p.alpha2 / 4;
        if (x > -a) return CReal(Real(0), sgn * (eta_inner(a, x) - qa));
        return CReal(xi_real_right(a, -x), -sgn * 2 * qa);
    }
    if (a.is_zero()) return -log(1 - z * z) / 2;
    // a negative zero real part would select the wrong branch below
    if (z.re.is_zero() && signbit(z.re)) return xi(p, CReal(Real(0), z.im), side);
    // first quadrant closed form, extended by reflection
    if (z.im < 0) return conj(xi(p, conj(z)));
    if (z.re < 0) {
        CReal w = conj(xi(p, CReal(-z.re, z.im)));
        return w - CReal(Real(0), const_pi() * p.alpha2 / 2);
    }
    Real c = sqrt(1 - a * a);
    CReal X = sqrt(z - a) * sqrt(z + a);
    return atanh(X / (z * c)) * c - acosh(z / a);
}

// Right side of the implicit equation and its zeta-derivative S.
inline CReal xi_of_zeta(const Params& p, const CReal& zeta, CReal* S_out = nullptr) {
    CReal S = sqrt(zeta - p.alpha) * sqrt(zeta + p.alpha);
    if (S_out) *S_out = S;
    if (p.alpha.is_zero()) return zeta * zeta / 2;
    return zeta * S / 2 - log(zeta + S) * p.alpha2 / 2 + CReal(log(p.alpha) * p.alpha2 / 2);
}

inline CReal betahat_of_zeta(const Params& p, const CReal& zeta) {
    CReal S = sqrt(zeta - p.alpha) * sqrt(zeta + p.alpha);
    return CReal(Real(1)) / (S * (zeta + S));
}

// ------------------------------------------------------------------ zeta

struct TpPoint {
    CReal z, xi, zeta, beta, betahat, X, S;
    CReal dzeta;  // d zeta / dz
    CReal R;      // (zeta^2 - alpha^2)/(z^2 - a^2)
    Side side = Side::none;
    bool from_series = false;
};

enum class SeriesCenter { origin, turning_point };

inline CReal zeta_taylor(const Params& p, const CReal& z, SeriesCenter center) {
    if (center == SeriesCenter::origin) {
        const auto& s = *p.series_origin;
        if (abs(z) > s.radius) throw RangeError("zeta_taylor: outside the origin control radius");
        return s.eval(z);
    }
    const auto& s = *p.series_tp;
    if (abs(z - p.a) <= s.radius) return s.eval(z);
    if (abs(z + p.a) <= s.radius) return -s.eval(-z);
    throw RangeError("zeta_taylor: outside the turning-point control radius");
}

namespace detail {

inline void fill_rational_vars(const Params& p, TpPoint& t) {
    const CReal& z = t.z;
    if (t.side != Side::none && z.im.is_zero()) {
        // real point approached from one side of a cut
        Real sgn = t.side == Side::upper ? Real(1) : Real(-1);
        const Real& x = z.re;
        if (x > -p.a && x < p.a) t.X = CReal(Real(0), sgn * sqrt((p.a - x) * (p.a + x)));
        else if (x <= -p.a) t.X = CReal(-sqrt((x - p.a) * (x + p.a)));
        else t.X = CReal(sqrt((x - p.a) * (x + p.a)));
        const Real& zr = t.zeta.re;
        if (zr > -p.alpha && zr < p.alpha) t.S = CReal(Real(0), sgn * sqrt((p.alpha - zr) * (p.alpha + zr)));
        else if (zr <= -p.alpha) t.S = CReal(-sqrt((zr - p.alpha) * (zr + p.alpha)));
        else t.S = CReal(sqrt((zr - p.alpha) * (zr + p.alpha)));
    } else {
        t.X = sqrt(z - p.a) * sqrt(z + p.a);
        t.S = sqrt(t.zeta - p.alpha) * sqrt(t.zeta + p.alpha);
    }
    bool at_tp = (t.X.re.is_zero() && t.X.im.is_zero());
    if (!at_tp) {
        t.beta = CReal(Real(1)) / (t.X * (z + t.X));
        t.betahat = CReal(Real(1)) / (t.S * (t.zeta + t.S));
    }
}

// R and zeta' near a turning point from the series, free of 0/0.
inline void fill_from_series(const Params& p, TpPoint& t) {
    const auto& s = *p.series_tp;
    bool right = p.a.is_zero() || abs(t.z - p.a) <= abs(t.z + p.a);
    CReal w = right ? t.z : -t.z;
    CReal zt = right ? s.eval(w) : -s.eval(w);
    CReal d = s.eval_derivative(w);
    t.zeta = zt;
    t.dzeta = d;
    if (p.a.is_zero()) {
        CReal r = s.eval_tail(w, 1);  // zeta / z
        t.R = r * r;
        return;
    }
    // (zeta - alpha)/(z - a) on the right; the ratio is even under z -> -z
    CReal ratio = s.eval_tail(w, 1);
    CReal zw = right ? zt : -zt;
    t.R = ratio * (zw + p.alpha) / (w + p.a);
}

// The implicit-equation right side continued analytically out of the upper
// half plane, so Newton iterates that dip below (-alpha, alpha) or
// (alpha, inf) keep the branch.
inline CReal xi_of_zeta_upper(const Params& p, const CReal& zt, CReal& S) {
    if (zt.im < 0 && zt.re < p.alpha) S = CReal(Real(0), Real(1)) * sqrt(CReal(p.alpha2) - zt * zt);
    else S = sqrt(zt - p.alpha) * sqrt(zt + p.alpha);
    return zt * S / 2 - log(zt + S) * p.alpha2 / 2 + CReal(log(p.alpha) * p.alpha2 / 2);
}

inline CReal newton_zeta(const Params& p, const CReal& target_xi, const CReal& guess) {
    auto fd = [&](const CReal& zt) {
        CReal S;
        CReal v = xi_of_zeta_upper(p, zt, S) - target_xi;
        return std::make_pair(v, S);
    };
    Real tol = eps_digits(working_digits() - 3) * max(Real(1), abs(target_xi));
    return newton_solve(fd, guess, tol);
}

inline Real zeta_real_right(const Params& p, const Real& x) {
    if (p.a.is_zero()) return sqrt(-log1p(-x * x));
    Real target = xi_real_right(p.a, x);
    const Real& al = p.alpha;
    auto fd = [&](const Real& zt) {
        Real S = sqrt((zt - al) * (zt + al));
        Real v = zt * S / 2 - p.alpha2 / 2 * acosh(zt / al) - target;
        return std::make_pair(v, S);
    };
    Real hi = sqrt(2 * target + p.alpha2) + 1;
    while (fd(hi).first < 0) hi *= 2;
    Real tol = eps_digits(working_digits() - 2) * max(Real(1), target);
    return newton_bracketed(fd, al, hi, sqrt(2 * target + p.alpha2), tol, eps_digits(working_digits() + 2));
}

inline Real zeta_real_inner(const Params& p, const Real& x) {
    Real target = eta_inner(p.a, x);
    const Real& al = p.alpha;
    auto fd = [&](const Real& zt) {
        Real S = sqrt((al - zt) * (al + zt));
        Real v = zt * S / 2 + p.alpha2 / 2 * asin(zt / al) - target;
        return std::make_pair(v, S);
    };
    Real tol = eps_digits(working_digits() - 2);
    return newton_bracketed(fd, -al, al, x * al / p.a, tol, eps_digits(working_digits() + 2));
}

}  // namespace detail

inline bool in_taylor_zone(const Params& p, const CReal& z) {
    if (p.a.is_zero()) return abs(z) < p.taylor_radius;
    return abs(z - p.a) < p.taylor_radius || abs(z + p.a) < p.taylor_radius;
}

// zeta at a real point; points of (-a, a) are taken on the upper side.
inline TpPoint zeta(const Params& p, const Real& x, Side side = Side::upper) {
    if (!(x > -1 && x < 1)) throw DomainError("zeta: need -1 < x < 1");
    TpPoint t;
    t.z = CReal(x);
    t.side = (x < p.a) ? side : Side::none;
    if (t.side == Side::none && x < p.a) t.side = Side::upper;
    if (in_taylor_zone(p, t.z)) {
        detail::fill_from_series(p, t);
        t.zeta.im = Real(0);
        t.R.im = Real(0);
        t.dzeta.im = Real(0);
        t.from_series = true;
    } else {
        Real zr;
        if (x >= p.a) zr = detail::zeta_real_right(p, x);
        else if (x > -p.a) zr = detail::zeta_real_inner(p, x);
        else zr = -detail::zeta_real_right(p, -x);
        t.zeta = CReal(zr);
    }
    t.xi = p.a.is_zero() ? CReal(-log1p(-x * x) / 2) : xi(p, t.z, t.side == Side::none ? Side::upper : t.side);
    detail::fill_rational_vars(p, t);
    if (!t.from_series) {
        // zeta' = X / ((1 - z^2) S) and R = S^2 / X^2
        t.dzeta = t.X / ((1 - x * x) * t.S);
        t.R = (t.S * t.S) / (t.X * t.X);
        t.dzeta.im = Real(0);
        t.R.im = Real(0);
    }
    return t;
}

namespace detail {

// zeta for z in the closed first quadrant, continuing along a path from a
// real anchor when no hint is given.
inline CReal zeta_first_quadrant(const Params& p, const CReal& z, const std::optional<CReal>& hint) {
    if (p.a.is_zero()) {
        CReal w = z * z;
        CReal g = -log(1 - w) / w;
        return z * sqrt(g);
    }
    CReal target = xi(p, z);
    if (hint) return newton_zeta(p, target, *hint);
    Real xa = max(min(z.re, Real(0.95)), p.a + (1 - p.a) / 2);
    Real h = max(z.im, Real(0.25));
    std::vector<CReal> legs{CReal(xa), CReal(xa, h), CReal(z.re, h), z};
    CReal cur(zeta_real_right(p, xa));
    for (size_t k = 1; k < legs.size(); ++k) {
        const int steps = 24;
        for (int j = 1; j <= steps; ++j) {
            CReal w = legs[k - 1] + (legs[k] - legs[k - 1]) * (Real(j) / steps);
            if (w.im.is_zero()) continue;
            cur = newton_zeta(p, xi(p, w), cur);
        }
    }
    return cur;
}

}  // namespace detail

// zeta at a complex point off the real axis (or on it, via the real routine).
inline TpPoint zeta(const Params& p, const CReal& z, std::optional<CReal> hint = std::nullopt) {
    if (z.im.is_zero()) return zeta(p, z.re);
    TpPoint t;
    t.z = z;
    if (in_taylor_zone(p, z)) {
        detail::fill_from_series(p, t);
        t.from_series = true;
    } else {
        bool lower = z.im < 0, left = z.re < 0;
        CReal w = z;
        if (lower) w = conj(w);
        if (left) w = CReal(-w.re, w.im);
        std::optional<CReal> h;
        if (hint) {
            CReal hh = *hint;
            if (lower) hh = conj(hh);
            if (left) hh = CReal(-hh.re, hh.im);
            h = hh;
        }
        CReal zt = detail::zeta_first_quadrant(p, w, h);
        if (left) zt = CReal(-zt.re, zt.im);
        if (lower) zt = conj(zt);
        t.zeta = zt;
    }
    t.xi = xi(p, z);
    detail::fill_rational_vars(p, t);
    if (!t.from_series) {
        t.dzeta = t.X / ((1 - z * z) * t.S);
        t.R = (t.S * t.S) / (t.X * t.X);
    }
    return t;
}

}  // namespace ferrers
