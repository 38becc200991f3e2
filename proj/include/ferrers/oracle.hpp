#pragma once
// Reference implementations independent of the asymptotic machinery:
// hypergeometric-series Ferrers functions, a Frobenius-seeded Taylor-method
// integration of the Legendre equation, Taylor-method parabolic cylinder
// functions, and the exact coefficient functions A, B.

#include "abpair.hpp"
#include "pcf.hpp"
#include "tpgeom.hpp"

#include <cmath>

namespace ferrers {

struct RefValue {
    Real value, deriv;  // function and its x-derivative
};

constexpr int oracle_guard_digits = 10;

// (1 - x^2) W{P^{-mu}, Q^{-mu}} = Gamma(nu-mu+1)/Gamma(nu+mu+1).
inline Real legendre_wronskian_constant(const Real& nu, const Real& mu) {
    if (nu - mu + 1 > 0 && nu + mu + 1 > 0) return exp(log_gamma(nu - mu + 1) - log_gamma(nu + mu + 1));
    return gamma(nu - mu + 1) * recip_gamma(nu + mu + 1);
}

namespace detail {

struct HyperSum {
    Real S, dS;  // sum and d/dt
    double lost_digits;
};

// sum_k (a)_k (b)_k w_k / k! t^k with w_k = 1/(c)_k, or 1/Gamma(c+k) when
// regularized. Stops exactly when a or b is a non-positive integer.
inline HyperSum hyper_2f1(const Real& a, const Real& b, const Real& c, const Real& t, bool regularized) {
    long k = 0;
    Real term = 1;
    if (regularized) {
        if (is_nonpositive_integer(c)) {
            // leading terms vanish up to k = 1 - c, where 1/Gamma(c+k) = 1
            long k0 = 1 - std::lround(c.to_double());
            for (long j = 0; j < k0; ++j) term = term * (a + j) * (b + j) / Real(j + 1) * t;
            k = k0;
        } else {
            term = recip_gamma(c);
        }
    }
    Real S = term, dS = term * Real(k) / t, big = abs(term);
    const Real eps = working_eps();
    const long kmin = static_cast<long>(std::fabs(a.to_double()) + std::fabs(b.to_double()) + std::fabs(c.to_double())) + 4;
    int quiet = 0;
    for (; k < 10000000; ++k) {
        if ((a + k).is_zero() || (b + k).is_zero()) break;
        term = term * (a + k) * (b + k) / ((c + k) * Real(k + 1)) * t;
        S += term;
        dS += term * Real(k + 1) / t;
        big = max(big, abs(term));
        if (k > kmin && abs(term) <= eps * abs(S) * Real(1e-3)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    HyperSum out;
    out.S = S;
    out.dS = dS;
    out.lost_digits = S.is_zero() ? 1e9 : std::max(0.0, (log10(big) - log10(abs(S))).to_double());
    return out;
}

// Evaluate f at boosted precision, re-running with more digits when the
// series reports cancellation beyond the guard.
template <class F>
auto with_measured_guard(int target, F f) {
    int boost = oracle_guard_digits + 10;
    for (int attempt = 0; attempt < 4; ++attempt) {
        PrecisionScope ps(target + boost);
        auto [val, lost] = f();
        int spare = boost - static_cast<int>(std::ceil(lost));
        if (spare >= oracle_guard_digits || attempt == 3) return val;
        boost += (oracle_guard_digits - spare) + 10;
    }
    throw PrecisionError("oracle: unreachable");
}

// P^{-mu}_nu(x) (sign = -1) or P^{mu}_nu(x) (sign = +1) with derivative,
// plus the digits lost to cancellation in the series.
inline std::pair<RefValue, double> ferrers_P_signed(const Real& nu, const Real& mu, const Real& x, int sign) {
    Real t = (1 - x) / 2;
    HyperSum h = hyper_2f1(-nu, nu + 1, 1 - sign * mu, t, true);
    Real g = exp(-sign * mu / 2 * (log1p(-x) - log1p(x)));
    RefValue r;
    r.value = g * h.S;
    r.deriv = g * (-h.dS / 2 + sign * mu * h.S / (1 - x * x));
    return {r, h.lost_digits};
}

// Q^{-mu} = -(pi / (2 sin(mu pi))) [cos(mu pi) P^{-mu} - Gamma(nu-mu+1)/Gamma(nu+mu+1) P^{mu}]
inline std::pair<RefValue, double> ferrers_Q_direct(const Real& nu, const Real& mu, const Real& x) {
    auto [pm, lm] = ferrers_P_signed(nu, mu, x, -1);
    auto [pp, lp] = ferrers_P_signed(nu, mu, x, +1);
    Real ratio = legendre_wronskian_constant(nu, mu);
    Real s = sin_pi(mu), c = cos_pi(mu);
    Real f = -const_pi() / (2 * s);
    Real t1 = c * pm.value, t2 = ratio * pp.value;
    RefValue q{f * (t1 - t2), f * (c * pm.deriv - ratio * pp.deriv)};
    double lost = std::max(lm, lp);
    if (!q.value.is_zero())
        lost += std::max(0.0, (log10(max(abs(t1), abs(t2))) - log10(abs(t1 - t2))).to_double());
    return {q, lost};
}

}  // namespace detail

// Ferrers function of the first kind P^{-mu}_nu(x) by the hypergeometric
// series in (1-x)/2, at working precision + guard.
inline RefValue ferrers_P_ref(const Real& nu, const Real& mu, const Real& x) {
    if (!(x > -1 && x < 1)) throw DomainError("ferrers_P_ref: need -1 < x < 1");
    if (mu < 0) throw DomainError("ferrers_P_ref: need mu >= 0");
    const int p = working_digits();
    RefValue r = detail::with_measured_guard(p, [&] { return detail::ferrers_P_signed(nu, mu, x, -1); });
    return {r.value.rounded(), r.deriv.rounded()};
}

inline RefValue ferrers_P_ref(const Params& prm, const Real& x) { return ferrers_P_ref(prm.nu, prm.mu, x); }

// P^{+mu}_nu(x), regularized so integer mu is allowed.
inline RefValue ferrers_P_pos_ref(const Real& nu, const Real& mu, const Real& x) {
    const int p = working_digits();
    RefValue r = detail::with_measured_guard(p, [&] { return detail::ferrers_P_signed(nu, mu, x, +1); });
    return {r.value.rounded(), r.deriv.rounded()};
}

// Threshold below which Q is taken as a limit in mu.
constexpr double q_integer_mu_threshold = 1e-6;

// Ferrers function of the second kind Q^{-mu}_nu(x). Near-integer mu goes
// through polynomial interpolation in mu over nodes m +- j/1000, j = 1..10.
inline RefValue ferrers_Q_ref(const Real& nu, const Real& mu, const Real& x) {
    if (!(x > -1 && x < 1)) throw DomainError("ferrers_Q_ref: need -1 < x < 1");
    if (mu < 0 || mu > nu + Real(0.5) + Real(1e-30)) throw DomainError("ferrers_Q_ref: need 0 <= mu <= nu + 1/2");
    const int p = working_digits();
    Real m = round(mu);
    double dist = abs(mu - m).to_double();
    RefValue r;
    if (dist >= q_integer_mu_threshold) {
        r = detail::with_measured_guard(p, [&] { return detail::ferrers_Q_direct(nu, mu, x); });
    } else {
        // each node loses about 3 digits to 1/sin(mu pi)
        const int K = 10;
        Real h("0.001");
        r = detail::with_measured_guard(p + 4, [&] {
            std::vector<Real> nodes, vals, ders;
            double lost = 0;
            for (int j = -K; j <= K; ++j) {
                if (j == 0) continue;
                Real mj = m + h * j;
                auto [q, l] = detail::ferrers_Q_direct(nu, mj, x);
                lost = std::max(lost, l);
                nodes.push_back(mj);
                vals.push_back(q.value);
                ders.push_back(q.deriv);
            }
            Real v = 0, d = 0, lsum = 0;
            for (size_t i = 0; i < nodes.size(); ++i) {
                Real L = 1;
                for (size_t k = 0; k < nodes.size(); ++k)
                    if (k != i) L *= (mu - nodes[k]) / (nodes[i] - nodes[k]);
                v += L * vals[i];
                d += L * ders[i];
                lsum += abs(L);
            }
            return std::pair<RefValue, double>{RefValue{v, d}, lost + log10(lsum).to_double()};
        });
    }
    return {r.value.rounded(), r.deriv.rounded()};
}

inline RefValue ferrers_Q_ref(const Params& prm, const Real& x) { return ferrers_Q_ref(prm.nu, prm.mu, x); }

// ------------------------------------------------------------ ODE oracle

namespace detail {

// One Taylor step of (z^2-1)^2 y'' + 2z(z^2-1) y' - (N(z^2-1) + mu^2) y = 0.
inline void legendre_taylor_step(const Real& N, const Real& mu2, const Real& z0, const Real& h, Real& y, Real& dy) {
    Real q0 = z0 * z0 - 1, q1 = 2 * z0, q2 = 1;
    Real p2[5] = {q0 * q0, 2 * q0 * q1, q1 * q1 + 2 * q0 * q2, 2 * q1 * q2, q2 * q2};
    Real p1[4] = {2 * z0 * q0, 2 * (z0 * q1 + q0), 2 * (z0 * q2 + q1), 2 * q2};
    Real p0[3] = {-(N * q0 + mu2), -N * q1, -N * q2};
    std::vector<Real> c{y, dy};
    Real sum = y + dy * h, dsum = dy, hp = h;  // hp = h^{m+1}
    const Real eps = working_eps();
    int quiet = 0;
    for (int m = 0; m < 5000; ++m) {
        // coefficient of w^m; unknown c_{m+2}
        Real acc = 0;
        for (int j = 1; j <= 4; ++j) {
            int k = m - j + 2;
            if (k >= 2) acc += p2[j] * Real(static_cast<long>(k) * (k - 1)) * c[k];
        }
        for (int j = 0; j <= 3; ++j) {
            int k = m - j + 1;
            if (k >= 1) acc += p1[j] * Real(k) * c[k];
        }
        for (int j = 0; j <= 2; ++j) {
            int k = m - j;
            if (k >= 0) acc += p0[j] * c[k];
        }
        Real next = -acc / (p2[0] * Real(static_cast<long>(m + 2) * (m + 1)));
        c.push_back(next);
        Real td = next * (m + 2) * hp;
        hp *= h;
        Real tv = next * hp;
        sum += tv;
        dsum += td;
        if (m > 8 && abs(tv) <= eps * abs(sum) * Real(1e-2) && abs(td) * abs(h) <= eps * abs(dsum * h) * Real(1e-2) + eps * abs(sum) * Real(1e-2)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    y = sum;
    dy = dsum;
}

// Frobenius series at x = 1 in t = 1 - x: y = t^{mu/2} sum g_k t^k,
// g_0 = 2^{-mu/2}/Gamma(mu+1).
inline RefValue frobenius_at_one(const Real& nu, const Real& mu, const Real& x) {
    Real t = 1 - x, N = nu * (nu + 1);
    std::vector<Real> g{exp(-mu / 2 * log(Real(2)) - log_gamma(mu + 1))};
    Real s = g[0], ds = 0;  // ds: d/dt of sum g_k t^k
    const Real eps = working_eps();
    Real tp = 1;
    for (int m = 1; m < 10000; ++m) {
        Real r1 = m - 1 + mu / 2, r2 = m - 2 + mu / 2;
        Real acc = 2 * g[m - 1] * (2 * r1 * r1 + r1 - N);
        if (m >= 2) acc -= g[m - 2] * (r2 * r2 + r2 - N);
        Real gm = acc / (4 * Real(m) * (m + mu));
        g.push_back(gm);
        ds += gm * m * tp;
        tp *= t;
        Real term = gm * tp;
        s += term;
        if (m > 4 && abs(term) <= eps * abs(s) * Real(1e-3)) break;
    }
    Real pre = pow(t, mu / 2);
    RefValue r;
    r.value = pre * s;
    // dy/dt = pre (mu/(2t) s + ds); dy/dx = -dy/dt
    r.deriv = -pre * (mu / (2 * t) * s + ds);
    return r;
}

}  // namespace detail

// Second, independent P^{-mu}_nu oracle: Frobenius values near x = 1 carried
// to x by Taylor-series steps of the Legendre equation. The seed point sits
// where nu sqrt(2(1 - x)) < 1 so the Frobenius series does not cancel.
inline RefValue ferrers_P_ode_ref(const Real& nu, const Real& mu, const Real& x) {
    if (!(x > -1 && x < 1)) throw DomainError("ferrers_P_ode_ref: need -1 < x < 1");
    const int p = working_digits();
    RefValue out;
    {
        PrecisionScope ps(p + oracle_guard_digits + 15);
        Real seed = 1 - min(Real("0.001"), Real("0.5") / max(Real(1), nu * (nu + 1)));
        Real x0 = x > seed ? x : seed;
        RefValue s = detail::frobenius_at_one(nu, mu, x0);
        Real y = s.value, dy = s.deriv, z = x0;
        Real N = nu * (nu + 1), mu2 = mu * mu;
        while (z > x) {
            Real R = min(1 - z, 1 + z);
            // local oscillation rate bounds the step so the Taylor terms stay O(1)
            Real q = 1 - z * z;
            Real w = sqrt(abs(N * q - mu2)) / q;
            Real h = min(min(R / 2, Real("0.125")), Real(4) / w);
            if (z - h < x) h = z - x;
            detail::legendre_taylor_step(N, mu2, z, -h, y, dy);
            z -= h;
        }
        out = {y, dy};
    }
    return {out.value.rounded(), out.deriv.rounded()};
}

// ------------------------------------------------------------ PCF oracle

// Taylor-method integration of y'' = (x^2/4 + b) y from the origin values,
// at a precision sized for the growth of the dominant solution.
inline PcfValue pcf_ode_ref(const Real& b, const Real& x) {
    const int p = working_digits();
    double est = detail::maclaurin_log_size(b.to_double(), x.to_double()) / std::log(10.0);
    PcfValue out;
    out.b = b;
    out.x = x;
    {
        PrecisionScope ps(p + oracle_guard_digits + 10 + static_cast<int>(std::ceil(2 * est)));
        detail::PcfOrigin o = detail::pcf_origin(b);
        Real yu = o.U0, du = o.U1, yv = o.V0, dv = o.V1;
        Real z = 0;
        const Real eps = working_eps();
        Real dir = x < 0 ? Real(-1) : Real(1);
        while (abs(x - z) > 0) {
            Real k0 = z * z / 4 + b;
            Real h = min(Real("0.5") / max(Real(1), sqrt(abs(k0))), abs(x - z)) * dir;
            // coefficients for both solutions at once
            std::vector<Real> cu{yu, du}, cv{yv, dv};
            Real su = yu + du * h, sv = yv + dv * h, sdu = du, sdv = dv;
            Real hp = h;
            int quiet = 0;
            for (int k = 0; k < 10000; ++k) {
                // (k+2)(k+1) c_{k+2} = k0 c_k + (z/2) c_{k-1} + c_{k-2}/4
                Real nu_ = k0 * cu[k], nv_ = k0 * cv[k];
                if (k >= 1) {
                    nu_ += z / 2 * cu[k - 1];
                    nv_ += z / 2 * cv[k - 1];
                }
                if (k >= 2) {
                    nu_ += cu[k - 2] / 4;
                    nv_ += cv[k - 2] / 4;
                }
                Real den(static_cast<long>(k + 2) * (k + 1));
                nu_ /= den;
                nv_ /= den;
                cu.push_back(nu_);
                cv.push_back(nv_);
                sdu += nu_ * (k + 2) * hp;
                sdv += nv_ * (k + 2) * hp;
                hp *= h;
                su += nu_ * hp;
                sv += nv_ * hp;
                Real mag = abs(nu_ * hp) + abs(nv_ * hp);
                if (k > 6 && mag <= eps * (abs(su) + abs(sv)) * Real(1e-3)) {
                    if (++quiet >= 3) break;
                } else {
                    quiet = 0;
                }
            }
            yu = su;
            du = sdu;
            yv = sv;
            dv = sdv;
            z += h;
        }
        out.U = yu;
        out.Uprime = du;
        out.V = yv;
        out.Vprime = dv;
    }
    out.U = out.U.rounded();
    out.Uprime = out.Uprime.rounded();
    out.V = out.V.rounded();
    out.Vprime = out.Vprime.rounded();
    return out;
}

// ------------------------------------------------------------ exact A, B

enum class ExactForm {
    reflection,  // from P(x), P(-x) and U at +-sqrt(2u) zeta; carries Gamma(mu - nu)
    pq           // from P, Q and U, V at +sqrt(2u) zeta; pole-free
};

// Distance of nu - mu from the non-negative integers below which the
// reflection form is replaced by the P, Q form.
constexpr double exact_pole_threshold = 1e-6;

// A(x), B(x) solving the P and Q representations exactly at real x, computed
// from the hypergeometric and Taylor-method oracles at boosted precision.
inline AbPair ab_exact_ref(const Params& prm, const Real& x, std::optional<ExactForm> form = std::nullopt) {
    const int p = working_digits();
    ExactForm f;
    Real lam = prm.nu - prm.mu;
    if (form) {
        f = *form;
    } else {
        bool near_pole = lam > -Real(0.5) && abs(lam - round(lam)).to_double() < exact_pole_threshold;
        f = near_pole ? ExactForm::pq : ExactForm::reflection;
    }
    AbPair out;
    out.method = AbMethod::exact;
    {
        PrecisionScope ps(p + oracle_guard_digits + 20);
        TpPoint t = zeta(prm, x);
        Real zt = t.zeta.re;
        Real c = sqrt(2 * prm.u);
        Real y = c * zt;
        if (f == ExactForm::reflection) {
            Real g = gamma(-lam);  // Gamma(mu - nu)
            RefValue pp = ferrers_P_ref(prm.nu, prm.mu, x), pm = ferrers_P_ref(prm.nu, prm.mu, -x);
            PcfValue up = pcf_ode_ref(prm.b, y), um = pcf_ode_ref(prm.b, -y);
            // d/dzeta U(b, +-c zeta) = +-c U'(b, +-c zeta)
            Real dUm = -c * um.Uprime, dUp = c * up.Uprime;
            Real k = sqrt(Real(2)) * g / (4 * sqrt(prm.u));
            out.A = CReal(k * (pp.value * dUm - pm.value * dUp));
            out.B = CReal(-k * (pp.value * um.U - pm.value * up.U));
        } else {
            RefValue P = ferrers_P_ref(prm.nu, prm.mu, x), Q = ferrers_Q_ref(prm.nu, prm.mu, x);
            PcfValue v = pcf_ode_ref(prm.b, y);
            Real rg = recip_gamma(lam + 1);
            Real hp = const_pi() / 2;
            out.A = CReal(hp * P.value * v.Vprime - Q.value * v.Uprime * rg);
            out.B = CReal((Q.value * v.U * rg - hp * P.value * v.V) / c);
        }
    }
    out.A = CReal(out.A.re.rounded());
    out.B = CReal(out.B.re.rounded());
    return out;
}

}  // namespace ferrers
