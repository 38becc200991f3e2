#pragma once
// Ferrers functions P^{-mu}_nu(x), Q^{-mu}_nu(x) of large degree and order
// from their representation in parabolic cylinder functions,
//   P^{-mu}_nu(x) = sqrt(2/pi) {U(b, y) A(x) + dU(b, y)/dzeta B(x)},
//   Q^{-mu}_nu(x) = sqrt(pi/2) Gamma(nu-mu+1) {V(b, y) A(x) + dV(b, y)/dzeta B(x)},
// with y = sqrt(2u) zeta, b = mu - nu - 1/2, and slowly varying coefficient
// functions A, B obtained from their asymptotic expansions in 1/u.

#include "abpair.hpp"
#include "coeffs.hpp"
#include "jet.hpp"
#include "oracle.hpp"
#include "pcf.hpp"
#include "tpgeom.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace ferrers {

constexpr int max_terms = 4;
constexpr double endpoint_guard = 1e-3;
constexpr int assemble_guard_digits = 10;

enum class AbForm {
    reexpanded,  // 1 + sum A_{2s}/u^{2s} and u^{-2} sum B_{2s}/u^{2s}
    exponential  // exp(even sum) cosh(odd sum) and its sinh companion
};

struct TaylorConfig {
    int points = 32;     // minimum number of distinct sample points on the ring
    double radius = 0.04;
};

namespace detail {

// exp of a truncated power series whose constant term is zero.
template <class T>
std::vector<T> series_exp(const std::vector<T>& g) {
    std::vector<T> f(g.size(), T(0));
    f[0] = T(1);
    for (size_t k = 1; k < g.size(); ++k) {
        T acc(0);
        for (size_t j = 1; j <= k; ++j) acc = acc + g[j] * f[k - j] * static_cast<long>(j);
        f[k] = acc / static_cast<long>(k);
    }
    return f;
}

template <class T>
struct LgVars {
    T beta, betahat, S;
};

// Combined coefficients Et_k = E_k + (-1)^k et_k and Ec_k = E_k + (-1)^k e_k,
// k = 1..kmax (index 0 unused).
template <class T>
void combined_E(const NumericCoeffs& nc, const LgVars<T>& v, int kmax, std::vector<T>& Et, std::vector<T>& Ec) {
    if (kmax > nc.max_s()) throw RangeError("combined_E: order exceeds the generated tables");
    Et.assign(kmax + 1, T(0));
    Ec.assign(kmax + 1, T(0));
    for (int k = 1; k <= kmax; ++k) {
        T E = horner(nc.E[k - 1], v.beta);
        T et = horner(nc.et[k - 1], v.betahat), e = horner(nc.e[k - 1], v.betahat);
        if (k % 2) {
            Et[k] = E - et;
            Ec[k] = E - e;
        } else {
            Et[k] = E + et;
            Ec[k] = E + e;
        }
    }
}

// Re-expanded coefficients A_{2s} (s = 0..n-1, A_0 = 1) and B_{2s}.
template <class T>
void reexpanded_terms(const NumericCoeffs& nc, const DConstants& d, const LgVars<T>& v, int n, std::vector<T>& A,
                      std::vector<T>& B) {
    const int K = 2 * n;
    std::vector<T> Et, Ec;
    combined_E(nc, v, K - 1, Et, Ec);
    std::vector<T> gp(K, T(0)), gm(K, T(0)), hp(K, T(0)), hm(K, T(0));
    for (int k = 1; k < K; ++k) {
        bool odd = k % 2;
        T ga = odd ? Et[k] + d(k) : Et[k];
        T gb = odd ? Ec[k] + d(k) : Ec[k];
        gp[k] = ga;
        gm[k] = odd ? -ga : ga;
        hp[k] = gb;
        hm[k] = odd ? -gb : gb;
    }
    std::vector<T> ep = series_exp(gp), em = series_exp(gm), fp = series_exp(hp), fm = series_exp(hm);
    A.assign(n, T(0));
    B.assign(n, T(0));
    for (int s = 0; s < n; ++s) {
        A[s] = (ep[2 * s] + em[2 * s]) / 2;
        B[s] = (fp[2 * s + 1] - fm[2 * s + 1]) / 2 / v.S;
    }
}

// A(u,a,z) and B(u,a,z) at a point, without the common prefactor.
template <class T>
std::pair<T, T> expansion_values(const NumericCoeffs& nc, const DConstants& d, const LgVars<T>& v, const Real& u, int n,
                                 AbForm form) {
    if (form == AbForm::reexpanded) {
        std::vector<T> As, Bs;
        reexpanded_terms(nc, d, v, n, As, Bs);
        Real iu2 = 1 / (u * u), w = 1;
        T A(0), B(0);
        for (int s = 0; s < n; ++s) {
            A = A + As[s] * w;
            B = B + Bs[s] * w;
            w *= iu2;
        }
        return {A, B * iu2};
    }
    std::vector<T> Et, Ec;
    combined_E(nc, v, 2 * n - 1, Et, Ec);
    T ea(0), oa(0), eb(0), ob(0);
    Real iu = 1 / u;
    for (int k = 1; k <= 2 * n - 1; ++k) {
        Real w = pow(iu, k);
        if (k % 2) {
            oa = oa + (Et[k] + d(k)) * w;
            ob = ob + (Ec[k] + d(k)) * w;
        } else {
            ea = ea + Et[k] * w;
            eb = eb + Ec[k] * w;
        }
    }
    T A = exp(ea) * cosh(oa);
    T B = exp(eb) * sinh(ob) / (v.S * u);
    return {A, B};
}

// log of pi^{1/4} u^{-1/4} / sqrt(2 Gamma(u + mu + 1/2))
inline Real log_prefactor(const Params& p) {
    return log(const_pi()) / 4 - log(p.u) / 4 - log(Real(2)) / 2 - log_gamma(p.u + p.mu + Real(0.5)) / 2;
}

inline void check_terms(int n) {
    if (n < 1 || n > max_terms) throw RangeError("number of terms must be between 1 and 4");
}

}  // namespace detail

// ------------------------------------------------------------ expansion

// A, B and their z-derivatives from the expansions in inverse powers of u.
// Valid away from the turning points; the exponential form also needs z away
// from the whole interval [-a, a].
inline AbPair ab_expansion(const Params& p, const CReal& z, int n = max_terms, AbForm form = AbForm::reexpanded,
                           std::optional<CReal> zeta_hint = std::nullopt) {
    detail::check_terms(n);
    const Real excl = p.taylor_radius / 2;
    if (form == AbForm::reexpanded) {
        if (abs(z - p.a) < excl || abs(z + p.a) < excl)
            throw RangeError("ab_expansion: inside the turning-point exclusion zone");
    } else {
        bool near = abs(z.im) < excl && abs(z.re) < p.a + excl;
        if (near) throw RangeError("ab_expansion: exponential form needs z away from [-a, a]");
    }
    TpPoint t = z.im.is_zero() ? zeta(p, z.re) : zeta(p, z, zeta_hint);
    using J = Jet<CReal>;
    J Z = J::variable(z);
    J X(t.X, z / t.X);
    J zt(t.zeta, t.dzeta);
    J S(t.S, t.zeta * t.dzeta / t.S);
    detail::LgVars<J> v{J(1) / (X * (Z + X)), J(1) / (S * (zt + S)), S};
    J R = (S * S) / (X * X);
    J R4 = sqrt(sqrt(R));
    NumericCoeffs nc(p.a2, p.alpha2);
    DConstants d = d_constants(p.alpha, n);
    auto [A, B] = detail::expansion_values(nc, d, v, p.u, n, form);
    Real pre = exp(detail::log_prefactor(p));
    J Af = R4 * A * pre, Bf = R4 * B * pre;
    AbPair out;
    out.A = Af.v;
    out.B = Bf.v;
    out.dA = Af.d;
    out.dB = Bf.d;
    out.has_derivative = true;
    out.method = AbMethod::expansion;
    return out;
}

// The re-expanded coefficients A_{2s}(a, z), B_{2s}(a, z), s = 0..n-1, at a
// point outside the turning-point zones.
struct AbCoefficients {
    std::vector<CReal> A, B;
};

inline AbCoefficients ab_coefficients(const Params& p, const CReal& z, int n = max_terms) {
    detail::check_terms(n);
    if (in_taylor_zone(p, z)) throw RangeError("ab_coefficients: inside the turning-point Taylor zone");
    TpPoint t = z.im.is_zero() ? zeta(p, z.re) : zeta(p, z);
    NumericCoeffs nc(p.a2, p.alpha2);
    DConstants d = d_constants(p.alpha, n);
    AbCoefficients out;
    detail::reexpanded_terms(nc, d, detail::LgVars<CReal>{t.beta, t.betahat, t.S}, n, out.A, out.B);
    return out;
}

// ------------------------------------------------------------ Taylor

// Taylor coefficients about z = a of A_{2s}(a, z) and B_{2s}(a, z),
// s = 0..n-1, extracted from samples on a ring around the turning point.
struct TaylorTable {
    Real a;
    int n = 0;
    std::vector<std::vector<Real>> A, B;  // [s][m], coefficient of (z-a)^m
    Real singular_ratio;                  // largest odd (branch) channel over the analytic scale
    Real alias_ratio;                     // last two kept terms on the ring over the analytic scale
    int points = 0;
    int work_digits = 0;
};

namespace detail {

// Direct DFT of samples f(w_j), w_j = rho e^{2 pi i j/M}: coefficient c_k of w^k.
inline std::vector<CReal> ring_dft(const std::vector<CReal>& f, const Real& rho, int kmin, int kmax) {
    const int M = static_cast<int>(f.size());
    std::vector<CReal> c;
    for (int k = kmin; k <= kmax; ++k) {
        CReal acc(0);
        for (int j = 0; j < M; ++j) {
            // e^{-2 pi i j k / M}, reduced mod M for accuracy
            long r = ((static_cast<long>(j) * k) % M + M) % M;
            Real th = Real(2 * r) / M;
            acc += f[j] * CReal(cos_pi(th), -sin_pi(th));
        }
        c.push_back(acc / M / pow(rho, k));
    }
    return c;
}

inline std::shared_ptr<const TaylorTable> build_taylor_table(const Params& p0, int n, const TaylorConfig& cfg) {
    const int p_out = working_digits();
    Real r = min(Real(cfg.radius), p0.taylor_radius / 2);
    const bool coalesced = p0.a.is_zero();
    // enough points that the kept terms converge at the edge of the zone,
    // the nearest singularity being z = 1
    const double reach = log10((1 - p0.a) / p0.taylor_radius).to_double();
    const int M = std::max(cfg.points, static_cast<int>(std::ceil((p_out + 5) / reach)));
    // z_j = a + r e^{2 pi i j/M}. For a > 0 each z_j is reached from both
    // square roots w = +-sqrt(z_j - a), continuing the branches of S and X:
    // the even part is the analytic function, the odd part must vanish.
    auto sample_vars = [&](const Params& q, int j, int sign, CReal& z, LgVars<CReal>& v) {
        Real th = Real(2 * j) / M;
        if (coalesced) {
            z = CReal(r * cos_pi(th), r * sin_pi(th));
            TpPoint t = zeta(q, z);
            v = {t.beta, t.betahat, t.S};
            return;
        }
        Real rho = sqrt(r);
        CReal w(rho * cos_pi(th / 2), rho * sin_pi(th / 2));
        if (sign < 0) w = -w;
        const auto& ser = *q.series_tp;
        CReal tt = w * w;
        z = tt + q.a;
        CReal g = ser.eval_tail(z, 1);
        CReal zt = tt * g + q.alpha;
        CReal S = w * sqrt(g * (zt + q.alpha));
        CReal X = w * sqrt(tt + 2 * q.a);
        v = {CReal(1) / (X * (z + X)), CReal(1) / (S * (zt + S)), S};
    };
    // size the guard from the largest rational variable on the ring
    double L = 0;
    {
        CReal z;
        LgVars<CReal> v;
        sample_vars(p0, 0, 1, z, v);
        L = std::max({0.0, log10(abs(v.beta)).to_double(), log10(abs(v.betahat)).to_double()});
    }
    const int guard = 20 + static_cast<int>(std::ceil(3 * (2 * n - 1) * L));
    auto table = std::make_shared<TaylorTable>();
    table->a = p0.a;
    table->n = n;
    table->points = M;
    table->work_digits = p_out + guard;
    {
        PrecisionScope ps(p_out + guard);
        Params q = make_params(p0.nu, p0.a, p0.cfg);
        NumericCoeffs nc(q.a2, q.alpha2);
        DConstants d = d_constants(q.alpha, n);
        std::vector<std::vector<CReal>> fa(n, std::vector<CReal>(M)), fb(n, std::vector<CReal>(M));
        std::vector<Real> odd_a(n, Real(0)), odd_b(n, Real(0));
        for (int j = 0; j < M; ++j) {
            CReal z;
            LgVars<CReal> v;
            std::vector<CReal> As, Bs;
            sample_vars(q, j, 1, z, v);
            reexpanded_terms(nc, d, v, n, As, Bs);
            if (coalesced) {
                for (int s = 0; s < n; ++s) {
                    fa[s][j] = As[s];
                    fb[s][j] = Bs[s];
                }
                continue;
            }
            std::vector<CReal> Am, Bm;
            sample_vars(q, j, -1, z, v);
            reexpanded_terms(nc, d, v, n, Am, Bm);
            for (int s = 0; s < n; ++s) {
                fa[s][j] = (As[s] + Am[s]) / 2;
                fb[s][j] = (Bs[s] + Bm[s]) / 2;
                odd_a[s] = max(odd_a[s], abs(As[s] - Am[s]) / 2);
                odd_b[s] = max(odd_b[s], abs(Bs[s] - Bm[s]) / 2);
            }
        }
        Real worst = 0, alias = 0;
        auto extract = [&](const std::vector<CReal>& f, const Real& odd, std::vector<Real>& taylor) {
            std::vector<CReal> c = ring_dft(f, r, 0, M - 1);
            Real scale = 0, junk = odd, tail = 0;
            for (int k = 0; k < M; ++k) {
                Real rk = pow(r, k);
                scale = max(scale, abs(c[k].re) * rk);
                junk = max(junk, abs(c[k].im) * rk);
                if (k >= M - 2) tail = max(tail, abs(c[k]) * rk);
                taylor.push_back(c[k].re);
            }
            if (!scale.is_zero()) {
                worst = max(worst, junk / scale);
                alias = max(alias, tail / scale);
            }
        };
        table->A.resize(n);
        table->B.resize(n);
        for (int s = 0; s < n; ++s) {
            extract(fa[s], odd_a[s], table->A[s]);
            extract(fb[s], odd_b[s], table->B[s]);
        }
        table->singular_ratio = worst;
        table->alias_ratio = alias;
    }
    for (auto& row : table->A)
        for (auto& c : row) c = c.rounded();
    for (auto& row : table->B)
        for (auto& c : row) c = c.rounded();
    table->singular_ratio = table->singular_ratio.rounded();
    table->alias_ratio = table->alias_ratio.rounded();
    if (table->singular_ratio > pow10(12 - p_out))
        throw InconsistencyError("ab_taylor: singular channels above the noise threshold");
    return table;
}

}  // namespace detail

// Cached per (a, precision, n, ring); the coefficients do not depend on u.
inline std::shared_ptr<const TaylorTable> taylor_table(const Params& p, int n = max_terms, const TaylorConfig& cfg = {}) {
    detail::check_terms(n);
    static std::mutex mtx;
    static std::map<std::string, std::shared_ptr<const TaylorTable>> cache;
    std::string key = p.a.str(working_digits() + 5) + "|" + std::to_string(working_digits()) + "|" + std::to_string(n) +
                      "|" + std::to_string(cfg.points) + "|" + std::to_string(cfg.radius) + "|" +
                      std::to_string(p.taylor_radius.to_double());
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto t = detail::build_taylor_table(p, n, cfg);
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, t);
    return t;
}

namespace detail {

// R^{1/4} and its derivative from the zeta series about z = a (w = z on the right).
inline std::pair<CReal, CReal> r4_near_tp(const Params& p, const CReal& w) {
    const auto& s = *p.series_tp;
    CReal R, dR;
    if (p.a.is_zero()) {
        CReal g = s.eval_tail(w, 1), dg = s.eval_tail_derivative(w, 1);
        R = g * g;
        dR = 2 * g * dg;
    } else {
        CReal g = s.eval_tail(w, 1), dg = s.eval_tail_derivative(w, 1);
        CReal zt = s.eval(w), dz = s.eval_derivative(w);
        CReal den = w + p.a;
        R = g * (zt + p.alpha) / den;
        dR = (dg * (zt + p.alpha) + g * dz) / den - R / den;
    }
    CReal R4 = sqrt(sqrt(R));
    return {R4, R4 * dR / (4 * R)};
}

}  // namespace detail

// A, B near a turning point (or near the origin when a = 0) from the Taylor
// series of the re-expanded coefficients.
inline AbPair ab_taylor(const Params& p, const CReal& z, int n = max_terms, const TaylorConfig& cfg = {}) {
    detail::check_terms(n);
    if (!in_taylor_zone(p, z)) throw RangeError("ab_taylor: z outside the turning-point Taylor zone");
    bool left = !p.a.is_zero() && abs(z + p.a) < abs(z - p.a);
    CReal w = left ? -z : z;
    auto tab = taylor_table(p, n, cfg);
    CReal tt = w - p.a;
    CReal A(1), dA(0), B(0), dB(0);
    const Real iu2 = 1 / (p.u * p.u);
    auto poly = [&](const std::vector<Real>& c, CReal& v, CReal& d) {
        v = CReal(0);
        d = CReal(0);
        for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) {
            d = d * tt + v;
            v = v * tt + c[m];
        }
    };
    // A = 1 + sum_{s>=1} A_{2s} u^{-2s}, B = sum_{s>=0} B_{2s} u^{-2s-2}
    Real wa = 1;
    for (int s = 0; s < n; ++s) {
        Real wb = wa * iu2;
        CReal v, d;
        if (s > 0) {
            poly(tab->A[s], v, d);
            A += v * wa;
            dA += d * wa;
        }
        poly(tab->B[s], v, d);
        B += v * wb;
        dB += d * wb;
        wa = wb;
    }
    auto [R4, dR4] = detail::r4_near_tp(p, w);
    Real pre = exp(detail::log_prefactor(p));
    AbPair out;
    out.A = R4 * A * pre;
    out.dA = (dR4 * A + R4 * dA) * pre;
    out.B = R4 * B * pre;
    out.dB = (dR4 * B + R4 * dB) * pre;
    if (left) {
        // A is even and B is odd in z
        out.dA = -out.dA;
        out.B = -out.B;
    }
    out.has_derivative = true;
    out.method = AbMethod::taylor;
    return out;
}

// ------------------------------------------------------------ contour

// Expansion values on the circle |t| = radius, reused for every interior z.
struct ContourData {
    Params p;
    int n = max_terms;
    Real radius;
    std::vector<CReal> t, A, B;
};

inline ContourData make_contour(const Params& p, int n = max_terms, const Real& radius = Real("0.75"), int points = 256) {
    detail::check_terms(n);
    if (points < 8 || points % 2) throw GeometryError("contour: need an even number of points, at least 8");
    if (!(radius > p.a + p.taylor_radius) || !(radius < Real("0.98")))
        throw GeometryError("contour: radius must clear the turning points and stay inside (-1, 1)");
    ContourData cd;
    cd.p = p;
    cd.n = n;
    cd.radius = radius;
    cd.t.resize(points);
    cd.A.resize(points);
    cd.B.resize(points);
    const int half = points / 2;
    std::optional<CReal> hint;
    for (int j = 0; j <= half; ++j) {
        Real th = Real(2 * j) / points;
        CReal t(radius * cos_pi(th), radius * sin_pi(th));
        if (j == 0) t = CReal(radius);
        if (j == half) t = CReal(-radius);
        AbPair v = ab_expansion(p, t, n, AbForm::reexpanded, hint);
        TpPoint tp = t.im.is_zero() ? zeta(p, t.re) : zeta(p, t, hint);
        hint = tp.zeta;
        cd.t[j] = t;
        cd.A[j] = v.A;
        cd.B[j] = v.B;
        if (j > 0 && j < half) {
            cd.t[points - j] = conj(t);
            cd.A[points - j] = conj(v.A);
            cd.B[points - j] = conj(v.B);
        }
    }
    return cd;
}

// Cauchy integral over the sampled circle (trapezoidal rule) for A, B and
// their derivatives at an interior point.
inline AbPair ab_contour(const ContourData& cd, const CReal& z) {
    if (!(abs(z) < cd.radius)) throw GeometryError("ab_contour: z must lie inside the contour");
    AbPair out;
    const int N = static_cast<int>(cd.t.size());
    for (int j = 0; j < N; ++j) {
        CReal k = cd.t[j] / (cd.t[j] - z);
        CReal k2 = k / (cd.t[j] - z);
        out.A += cd.A[j] * k;
        out.B += cd.B[j] * k;
        out.dA += cd.A[j] * k2;
        out.dB += cd.B[j] * k2;
    }
    out.A = out.A / N;
    out.B = out.B / N;
    out.dA = out.dA / N;
    out.dB = out.dB / N;
    out.has_derivative = true;
    out.method = AbMethod::contour;
    return out;
}

inline AbPair ab_contour(const Params& p, const CReal& z, int n = max_terms, const Real& radius = Real("0.75"),
                         int points = 256) {
    return ab_contour(make_contour(p, n, radius, points), z);
}

enum class AbRoute { automatic, taylor, expansion, contour };

// Taylor series inside the turning-point zone, expansion elsewhere, unless a
// route is forced.
inline AbPair ab_auto(const Params& p, const Real& x, int n = max_terms, AbRoute route = AbRoute::automatic) {
    switch (route) {
        case AbRoute::taylor: return ab_taylor(p, CReal(x), n);
        case AbRoute::expansion: return ab_expansion(p, CReal(x), n);
        case AbRoute::contour: {
            Real radius = min(max(Real("0.75"), p.a + p.taylor_radius + Real("0.05")), Real("0.95"));
            if (!(abs(x) < radius - Real("0.02"))) return ab_expansion(p, CReal(x), n);
            return ab_contour(p, CReal(x), n, radius);
        }
        case AbRoute::automatic: break;
    }
    if (in_taylor_zone(p, CReal(x))) return ab_taylor(p, CReal(x), n);
    return ab_expansion(p, CReal(x), n);
}

// ------------------------------------------------------------ Ferrers functions

struct FerrersValue {
    Real value, deriv;
    AbMethod method = AbMethod::expansion;
    Real imag_residual;  // largest imaginary part seen in A, B (reality check)
};

enum class FerrersKind { P, Q };

namespace detail {

inline FerrersValue assemble(const Params& p, const Real& x, int n, FerrersKind kind, AbRoute route) {
    check_terms(n);
    if (!(abs(x) <= 1 - Real(endpoint_guard))) throw DomainError("Ferrers evaluation: need |x| <= 1 - 1e-3");
    const int pw = working_digits();
    FerrersValue out;
    {
        PrecisionScope ps(pw + assemble_guard_digits);
        Real xa = abs(x);
        bool neg = x < 0;
        AbPair ab = ab_auto(p, xa, n, route);
        TpPoint t = zeta(p, xa);
        Real zt = t.zeta.re, dz = t.dzeta.re;
        Real A = ab.A.re, B = ab.B.re, dA = ab.dA.re, dB = ab.dB.re;
        out.imag_residual = max(max(abs(ab.A.im) / max(abs(A), abs(B)), abs(ab.B.im) / max(abs(A), abs(B))),
                                max(abs(ab.dA.im) / max(abs(dA), abs(dB)), abs(ab.dB.im) / max(abs(dA), abs(dB))));
        if (neg) {
            zt = -zt;
            B = -B;
            dA = -dA;
        }
        Real c = sqrt(2 * p.u);
        PcfValue v = pcf_eval(p.b, c * zt);
        Real F = kind == FerrersKind::P ? v.U : v.V;
        Real dF = c * (kind == FerrersKind::P ? v.Uprime : v.Vprime);  // d/dzeta
        // d^2/dzeta^2 F = u^2 (zeta^2 - alpha^2) F
        Real S2 = (zt - p.alpha) * (zt + p.alpha);
        Real At = dA + p.u * p.u * S2 * dz * B;
        Real Bt = dB + dz * A;
        Real k = kind == FerrersKind::P ? sqrt(2 / const_pi())
                                        : sqrt(const_pi() / 2) * exp(log_gamma(p.nu - p.mu + 1));
        out.value = k * (F * A + dF * B);
        out.deriv = k * (F * At + dF * Bt);
        out.method = ab.method;
    }
    out.value = out.value.rounded();
    out.deriv = out.deriv.rounded();
    out.imag_residual = out.imag_residual.rounded();
    return out;
}

}  // namespace detail

inline FerrersValue eval_ferrers(const Params& p, const Real& x, FerrersKind kind, int n = max_terms,
                                 AbRoute route = AbRoute::automatic) {
    return detail::assemble(p, x, n, kind, route);
}
inline Real eval_P(const Params& p, const Real& x, int n = max_terms) { return eval_ferrers(p, x, FerrersKind::P, n).value; }
inline Real eval_P_neg(const Params& p, const Real& x, int n = max_terms) { return eval_P(p, -x, n); }
inline Real eval_Q(const Params& p, const Real& x, int n = max_terms) { return eval_ferrers(p, x, FerrersKind::Q, n).value; }
inline Real eval_P_prime(const Params& p, const Real& x, int n = max_terms) {
    return eval_ferrers(p, x, FerrersKind::P, n).deriv;
}
inline Real eval_Q_prime(const Params& p, const Real& x, int n = max_terms) {
    return eval_ferrers(p, x, FerrersKind::Q, n).deriv;
}

// ------------------------------------------------------------ envelope and error

// Largest zero of Q^{-mu}_nu in (0, 1 - 1e-3), by a downward sign scan of the
// oracle followed by bisection; nullopt when Q keeps one sign.
inline std::optional<Real> q_zero(const Params& p) {
    const int pw = working_digits();
    Real hi = 1 - Real(endpoint_guard);
    Real step = min(Real("0.01"), 1 / p.u);
    Real x1 = hi;
    Real q1 = ferrers_Q_ref(p, x1).value;
    const bool s_top = signbit(q1);
    while (x1 > 0) {
        Real x0 = max(Real(0), x1 - step);
        Real q0 = ferrers_Q_ref(p, x0).value;
        if (q0.is_zero()) return x0;
        if (signbit(q0) != s_top) {
            Real lo = x0, up = x1;
            bool s_lo = signbit(q0);
            Real tol = pow10(-std::min(pw - 5, 30));
            for (int it = 0; it < 400 && up - lo > tol; ++it) {
                Real mid = (lo + up) / 2;
                Real qm = ferrers_Q_ref(p, mid).value;
                if (qm.is_zero()) return mid;
                if (signbit(qm) == s_lo) lo = mid;
                else up = mid;
            }
            if (up - lo > tol) throw SearchError("q_zero: bisection did not converge");
            return (lo + up) / 2;
        }
        x1 = x0;
    }
    return std::nullopt;
}

struct EnvelopeValue {
    Real M;
    std::optional<Real> q_zero;
};

// sqrt(P^2 + (2Q/pi)^2) up to the last zero of Q, P beyond it.
inline EnvelopeValue envelope(const Params& p, const Real& x, const std::optional<Real>& q) {
    EnvelopeValue e;
    e.q_zero = q;
    Real P = ferrers_P_ref(p, x).value;
    if (q && x <= *q) {
        Real Q = 2 * ferrers_Q_ref(p, x).value / const_pi();
        e.M = sqrt(P * P + Q * Q);
    } else {
        e.M = P;
    }
    return e;
}

inline EnvelopeValue envelope(const Params& p, const Real& x) { return envelope(p, x, q_zero(p)); }

struct OmegaRow {
    Real x, p_asym, p_ref, M, omega;
    AbMethod method = AbMethod::expansion;
};

inline OmegaRow omega_row(const Params& p, const Real& x, int n, const std::optional<Real>& q) {
    OmegaRow r;
    r.x = x;
    FerrersValue v = eval_ferrers(p, x, FerrersKind::P, n);
    r.p_asym = v.value;
    r.method = v.method;
    r.p_ref = ferrers_P_ref(p, x).value;
    r.M = envelope(p, x, q).M;
    Real delta = abs(r.p_ref - r.p_asym);
    Real floor_ = abs(r.M) * pow10(-working_digits());
    r.omega = log10(max(delta, floor_) / abs(r.M));
    return r;
}

inline Real omega_error(const Params& p, const Real& x, int n = max_terms) { return omega_row(p, x, n, q_zero(p)).omega; }

// Rows for a grid of x values, in input order regardless of thread count.
inline std::vector<OmegaRow> error_plot(const Params& p, const std::vector<Real>& xs, int n = max_terms, int threads = 1) {
    std::optional<Real> q = q_zero(p);
    std::vector<OmegaRow> rows(xs.size());
    const int digits = working_digits();
    threads = std::max(1, std::min<int>(threads, static_cast<int>(xs.size())));
    if (threads == 1) {
        for (size_t i = 0; i < xs.size(); ++i) rows[i] = omega_row(p, xs[i], n, q);
        return rows;
    }
    {
        // build the shared table once, at the precision the evaluations use
        PrecisionScope ps(digits + assemble_guard_digits);
        taylor_table(p, n);
    }
    std::vector<std::exception_ptr> errs(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                PrecisionScope ps(digits);
                for (size_t i = w; i < xs.size(); i += threads) rows[i] = omega_row(p, xs[i], n, q);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace ferrers
