#pragma once
// Real-argument parabolic cylinder functions U(b,x), V(b,x) and derivatives,
// solutions of y'' = (x^2/4 + b) y, plus the Liouville-Green forms of
// U(-u alpha^2/2, sqrt(2u) zeta) used away from the turning points.

#include "coeffs.hpp"
#include "numerics.hpp"

#include <cmath>

namespace ferrers {

struct PcfValue {
    Real b, x;
    Real U, Uprime, V, Vprime;
};

// Documented evaluation envelope.
constexpr double pcf_max_abs_b = 1e4;
constexpr double pcf_max_abs_x = 1e3;

namespace detail {

struct PcfOrigin {
    Real U0, U1, V0, V1;
};

// Values at x = 0, written with 1/Gamma so that no pole is ever touched.
inline PcfOrigin pcf_origin(const Real& b) {
    PcfOrigin o;
    Real sp = sqrt(const_pi());
    Real th = b / 2 + Real(0.25);  // sin/cos of pi*th
    o.U0 = sp * pow(Real(2), -b / 2 - Real(0.25)) * recip_gamma(Real(0.75) + b / 2);
    o.U1 = -sp * pow(Real(2), -b / 2 + Real(0.25)) * recip_gamma(Real(0.25) + b / 2);
    o.V0 = pow(Real(2), b / 2 + Real(0.25)) * sin_pi(th) * recip_gamma(Real(0.75) - b / 2);
    o.V1 = pow(Real(2), b / 2 + Real(0.75)) * cos_pi(th) * recip_gamma(Real(0.25) - b / 2);
    return o;
}

// Rough natural-log size of the largest Maclaurin term, from the majorant
// equation y'' = (x^2/4 + |b|) y.
inline double maclaurin_log_size(double b, double x) {
    double ax = std::fabs(x), c = std::fabs(b);
    double r = 0.5 * ax * std::sqrt(ax * ax / 4 + c);
    if (c > 0) r += c * std::asinh(ax / (2 * std::sqrt(c)));
    return r;
}

struct SeriesOut {
    Real U, Uprime, V, Vprime;
    double lost_digits;  // cancellation measured on the (U, U') pair
};

inline SeriesOut maclaurin(const Real& b, const Real& x, const PcfOrigin& o) {
    SeriesOut out;
    const Real x2 = x * x, x4q = x2 * x2 / 4;
    // terms t_k = C_k x^k; derivative terms k C_k x^{k-1}
    std::vector<Real> hU{o.U0, o.U1 * x}, hV{o.V0, o.V1 * x};
    Real sU = hU[0] + hU[1], sV = hV[0] + hV[1];
    Real dU = o.U1, dV = o.V1;
    Real maxU = max(abs(hU[0]), abs(hU[1])), maxdU = abs(dU);
    const Real eps = working_eps();
    const double xd = std::fabs(x.to_double()), bd = std::fabs(b.to_double());
    const int kmin = static_cast<int>(xd * xd + 2 * std::sqrt(bd) * xd) + 8;
    int quiet = 0;
    for (int k = 2;; ++k) {
        // t_k = (b x^2 t_{k-2} + x^4/4 t_{k-4}) / (k (k-1))
        Real nu = b * x2 * hU[k - 2], nv = b * x2 * hV[k - 2];
        if (k >= 4) {
            nu += x4q * hU[k - 4];
            nv += x4q * hV[k - 4];
        }
        Real den(static_cast<long>(k) * (k - 1));
        nu /= den;
        nv /= den;
        hU.push_back(nu);
        hV.push_back(nv);
        sU += nu;
        sV += nv;
        if (!x.is_zero()) {
            Real du = nu * k / x, dv = nv * k / x;
            dU += du;
            dV += dv;
            maxdU = max(maxdU, abs(dU));
        }
        maxU = max(maxU, abs(sU));
        Real mag = abs(nu) + abs(nv);
        Real scale = max(maxU, abs(sV));
        if (k > kmin && mag <= eps * scale * Real(1e-3)) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
        if (k > 4000000) throw ConvergenceError("pcf maclaurin: too many terms");
        if (x.is_zero()) break;
    }
    out.U = sU;
    out.V = sV;
    out.Uprime = dU;
    out.Vprime = dV;
    // amplitude of the (U, U'/k) pair, k the local wavenumber
    Real k2 = abs(x2 / 4 + b);
    Real s = 1 / max(Real(1), sqrt(k2));
    Real amp = max(abs(sU), abs(dU) * s);
    Real big = max(maxU, maxdU * s);
    if (amp.is_zero()) out.lost_digits = 1e9;
    else out.lost_digits = std::max(0.0, (log10(big) - log10(amp)).to_double());
    return out;
}

// Large positive x: U ~ e^{-x^2/4} x^{-b-1/2} sum (-1)^s (1/2+b)_{2s}/(s!(2x^2)^s),
// V ~ sqrt(2/pi) e^{x^2/4} x^{b-1/2} sum (1/2-b)_{2s}/(s!(2x^2)^s).
// Returns false when the series stalls before reaching working precision.
inline bool large_x(const Real& b, const Real& x, PcfValue& v) {
    const Real eps = working_eps() / 100;
    const Real w = 1 / (2 * x * x);
    Real tu = 1, tv = 1, su = 1, sv = 1, sud = 0, svd = 0;
    // d/dx of x^{-2s} contributes -2s/x
    Real last_u = infinity(), last_v = infinity();
    bool ok = false;
    for (int s = 0; s < 100000; ++s) {
        if (s > 0) {
            Real f1 = (b + Real(0.5) + (2 * s - 2)) * (b + Real(0.5) + (2 * s - 1));
            Real f2 = (Real(0.5) - b + (2 * s - 2)) * (Real(0.5) - b + (2 * s - 1));
            tu = -tu * f1 * w / s;
            tv = tv * f2 * w / s;
            if (abs(tu) > last_u || abs(tv) > last_v) break;
            su += tu;
            sv += tv;
            sud += tu * (-2 * s) / x;
            svd += tv * (-2 * s) / x;
        }
        last_u = abs(tu);
        last_v = abs(tv);
        if (s > 0 && abs(tu) <= eps * abs(su) && abs(tv) <= eps * abs(sv)) {
            ok = true;
            break;
        }
    }
    if (!ok) return false;
    Real eu = exp(-x * x / 4 - (b + Real(0.5)) * log(x));
    Real ev = sqrt(2 / const_pi()) * exp(x * x / 4 + (b - Real(0.5)) * log(x));
    v.U = eu * su;
    v.Uprime = eu * (su * (-x / 2 - (b + Real(0.5)) / x) + sud);
    v.V = ev * sv;
    v.Vprime = ev * (sv * (x / 2 + (b - Real(0.5)) / x) + svd);
    return true;
}

inline bool try_large_x(const Real& b, const Real& ax, PcfValue& v) {
    double xd = ax.to_double(), bd = std::fabs(b.to_double());
    double p = working_digits();
    // smallest terms are about e^{-x^2/2} x^{2|b|+1}
    if (xd * xd < 4 * bd + 20) return false;
    if (xd * xd / 2 - (2 * bd + 1) * std::log(xd) < (p + 15) * std::log(10.0)) return false;
    return large_x(b, ax, v);
}

inline bool pcf_large_path(const Real& b, const Real& x, PcfValue& out) {
    PrecisionScope guard(working_digits() + 10);
    PcfValue v;
    if (x > 0) {
        if (!try_large_x(b, x, v)) return false;
        out.U = v.U;
        out.Uprime = v.Uprime;
        out.V = v.V;
        out.Vprime = v.Vprime;
        return true;
    }
    if (!try_large_x(b, -x, v)) return false;
    Real sb = sin_pi(b), cb = cos_pi(b);
    Real rp = recip_gamma(Real(0.5) + b), rm = recip_gamma(Real(0.5) - b);
    Real pi = const_pi();
    // U(b,-x) = -sin(pi b) U(b,x) + pi/Gamma(1/2+b) V(b,x)
    // V(b,-x) = cos(pi b)/Gamma(1/2-b) U(b,x) + sin(pi b) V(b,x)
    out.U = -sb * v.U + pi * rp * v.V;
    out.Uprime = sb * v.Uprime - pi * rp * v.Vprime;
    out.V = cb * rm * v.U + sb * v.V;
    out.Vprime = -(cb * rm * v.Uprime + sb * v.Vprime);
    return true;
}

inline void pcf_series_path(const Real& b, const Real& x, PcfValue& out) {
    const int p = working_digits();
    double est = maclaurin_log_size(b.to_double(), x.to_double()) / std::log(10.0);
    int boost = 12 + static_cast<int>(std::ceil((x > 0 ? 2.0 : 1.0) * est));
    const int budget = std::max(200, 4 * p) + static_cast<int>(2.5 * est);
    for (int attempt = 0; attempt < 4; ++attempt) {
        SeriesOut s;
        {
            PrecisionScope guard(p + boost);
            s = maclaurin(b, x, pcf_origin(b));
        }
        int spare = boost - static_cast<int>(std::ceil(s.lost_digits));
        if (spare >= 8) {
            out.U = s.U;
            out.Uprime = s.Uprime;
            out.V = s.V;
            out.Vprime = s.Vprime;
            return;
        }
        boost += (8 - spare) + 10;
        if (boost > budget) break;
    }
    throw PrecisionError("pcf_eval: cancellation in the Maclaurin series exceeds the precision budget");
}

}  // namespace detail

// U, U', V, V' at (b, x), correct to the working precision. The Maclaurin
// path runs at boosted precision sized from the measured cancellation; when
// the boost required exceeds the budget a PrecisionError is raised.
inline PcfValue pcf_eval(const Real& b, const Real& x) {
    if (abs(b) > pcf_max_abs_b || abs(x) > pcf_max_abs_x) throw RangeError("pcf_eval: outside |b| <= 1e4, |x| <= 1e3");
    PcfValue out;
    if (!detail::pcf_large_path(b, x, out)) detail::pcf_series_path(b, x, out);
    out.b = b;
    out.x = x;
    out.U = out.U.rounded();
    out.Uprime = out.Uprime.rounded();
    out.V = out.V.rounded();
    out.Vprime = out.Vprime.rounded();
    return out;
}

// Maclaurin-only evaluation at the working precision, no boost: raises
// PrecisionError when the series loses more than p - 8 digits.
inline PcfValue pcf_eval_unboosted(const Real& b, const Real& x) {
    const int p = working_digits();
    detail::PcfOrigin o = detail::pcf_origin(b);
    detail::SeriesOut s = detail::maclaurin(b, x, o);
    if (s.lost_digits > p - 8) throw PrecisionError("pcf: series cancellation exceeds working precision");
    return PcfValue{b, x, s.U, s.Uprime, s.V, s.Vprime};
}

// Wronskian U V' - U' V; equals sqrt(2/pi).
inline Real pcf_wronskian_uv(const PcfValue& v) { return v.U * v.Vprime - v.Uprime * v.V; }

// ------------------------------------------------------------------ LG forms

struct PcfLgOptions {
    Real margin = Real(0.1);  // required zeta - alpha
};

// xihat = int_alpha^zeta (t^2 - alpha^2)^{1/2} dt for real zeta >= alpha.
inline Real xihat_real(const Real& alpha, const Real& zeta) {
    if (alpha.is_zero()) return zeta * zeta / 2;
    Real S = sqrt((zeta - alpha) * (zeta + alpha));
    return zeta * S / 2 - alpha * alpha / 2 * acosh(zeta / alpha);
}

// U(-u alpha^2/2, sqrt(2u) zeta) and its derivative with respect to the
// argument, from n-term LG expansions (sums run over s = 1..n-1).
inline PcfValue pcf_lg(const Real& u, const Real& alpha, const Real& zeta, int n, PcfLgOptions opt = {}) {
    if (n < 1 || n > default_max_s + 1) throw RangeError("pcf_lg: n out of range");
    if (!(zeta - alpha >= opt.margin)) throw RangeError("pcf_lg: zeta too close to the turning point");
    const Real A = alpha * alpha;
    PcfValue v;
    v.b = -u * A / 2;
    v.x = sqrt(2 * u) * zeta;
    const auto& t = coeff_tables();
    const Real S2 = (zeta - alpha) * (zeta + alpha);
    const Real S = sqrt(S2);
    const Real bh = 1 / (S * (zeta + S));
    Real sum_e = 0, sum_et = 0, up = 1;
    for (int s = 1; s <= n - 1; ++s) {
        up *= u;
        Real sg = (s % 2) ? Real(-1) : Real(1);
        sum_e += sg * horner(t.e[s - 1].at_A(A), bh) / up;
        sum_et += sg * horner(t.et[s - 1].at_A(A), bh) / up;
    }
    Real lpre = A.is_zero() ? Real(0) : (u * A / 4) * (log(u * A / 2) - 1);
    Real lxi = -u * xihat_real(alpha, zeta);
    v.U = exp(lpre - log(2 * u * S2) / 4 + lxi + sum_e);
    v.Uprime = -exp(lpre + log(u * S2 / 8) / 4 + lxi + sum_et);
    v.V = Real(0);
    v.Vprime = Real(0);
    return v;
}

// Maximum residual over the Wronskian identities and, when b = -n-1/2, the
// parity identity U(b,-x) = (-1)^n U(b,x). Residuals are relative to the
// natural scale of each identity.
inline Real pcf_connection_check(const Real& b, const Real& x) {
    PcfValue p = pcf_eval(b, x), m = pcf_eval(b, -x);
    Real r = 0;
    Real w = sqrt(2 / const_pi());
    Real wuv = pcf_wronskian_uv(p);
    r = max(r, abs(wuv - w) / max(w, abs(p.U * p.Vprime) + abs(p.Uprime * p.V)));
    // W{U(b,x), U(b,-x)} = sqrt(2 pi)/Gamma(1/2 + b); the second function has derivative -U'(b,-x)
    Real wpm = -p.U * m.Uprime - p.Uprime * m.U;
    Real expect = sqrt(2 * const_pi()) * recip_gamma(Real(0.5) + b);
    Real scale = abs(p.U * m.Uprime) + abs(p.Uprime * m.U);
    r = max(r, abs(wpm - expect) / max(scale, abs(expect)));
    Real nn = -b - Real(0.5);
    if (nn >= 0 && floor(nn) == nn) {
        long n = static_cast<long>(nn.to_double());
        Real sgn = (n % 2) ? Real(-1) : Real(1);
        r = max(r, abs(m.U - sgn * p.U) / max(abs(p.U), Real(1e-300)));
    }
    return r;
}

}  // namespace ferrers
