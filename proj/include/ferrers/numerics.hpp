#pragma once
// Numerical substrate: error types, exact rationals, Bernoulli numbers,
// log-gamma and friends, tanh-sinh quadrature and Newton iteration.

#include "complex.hpp"
#include "jet.hpp"

#include <functional>
#include <tuple>
#include <mutex>
#include <vector>

namespace ferrers {

using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct PrecisionError : Error { using Error::Error; };
struct InconsistencyError : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct SearchError : Error { using Error::Error; };
struct RootNotFound : Error {
    CReal last;
    RootNotFound(const std::string& what, CReal z) : Error(what), last(std::move(z)) {}
};

inline Real to_real(const Rational& q) { return Real(q); }

// 10^(-digits) at working precision.
inline Real eps_digits(int digits) { return pow10(-digits); }
inline Real working_eps() { return eps_digits(working_digits()); }

// ---------------------------------------------------------------- Bernoulli

// B_n as an exact rational (B_1 = -1/2), from sum_{j<=m} C(m+1,j) B_j = 0.
inline Rational bernoulli(int n) {
    static std::mutex mtx;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        Rational s = 0;
        mpz_class binom = 1;  // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            s += binom * table[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push_back(-s / (m + 1));
    }
    return table[n];
}

// ---------------------------------------------------------------- gamma

// ln Gamma(x) for x > 0: upward shift then the Stirling series.
inline Real log_gamma(const Real& x) {
    if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
    const int p = working_digits();
    const Real x0 = Real(0.4 * p + 10);
    Real y = x, prod = 1;
    bool shifted = false;
    while (y < x0) {
        prod *= y;
        y += 1;
        shifted = true;
    }
    const Real tiny = eps_digits(p + 5);
    Real r = (y - Real(0.5)) * log(y) - y + log(const_pi() * 2) / 2;
    Real y2 = y * y, ypow = y;
    Real last = infinity();
    for (int k = 1; k < 4 * p + 50; ++k) {
        Real term = to_real(bernoulli(2 * k)) / (Real(2 * k) * (2 * k - 1) * ypow);
        Real at = abs(term);
        if (at > last) throw ConvergenceError("log_gamma: asymptotic series diverged");
        r += term;
        if (at < tiny * max(Real(1), abs(r))) break;
        last = at;
        ypow *= y2;
    }
    if (shifted) r -= log(prod);
    return r;
}

// sin(pi x) with exact argument reduction.
inline Real sin_pi(const Real& x) {
    Real n = round(x);
    Real f = x - n;
    Real s = sin(const_pi() * f);
    long parity = static_cast<long>(mpfr_get_si(n.get(), MPFR_RNDN)) & 1L;
    return parity ? -s : s;
}

inline Real cos_pi(const Real& x) { return sin_pi(x + Real(0.5)); }

inline bool is_nonpositive_integer(const Real& x) { return x <= 0 && floor(x) == x; }

// 1/Gamma(x) for any real x (zero at the poles of Gamma).
inline Real recip_gamma(const Real& x) {
    if (x > 0) return exp(-log_gamma(x));
    if (is_nonpositive_integer(x)) return Real(0);
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    return sin_pi(x) * exp(log_gamma(1 - x)) / const_pi();
}

inline Real gamma(const Real& x) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma: pole");
    return 1 / recip_gamma(x);
}

// Pochhammer-free ratio Gamma(x)/Gamma(y) for positive x, y.
inline Real gamma_ratio(const Real& x, const Real& y) { return exp(log_gamma(x) - log_gamma(y)); }

// ---------------------------------------------------------------- quadrature

// Tanh-sinh rule on [lo, hi]. Converges exponentially for integrands analytic
// in the open interval, including integrable algebraic endpoint singularities.
// The integrand receives the abscissa and its distances to lo and hi, which
// are exact even when the abscissa rounds to an endpoint.
using EndpointIntegrand = std::function<Real(const Real& x, const Real& from_lo, const Real& from_hi)>;

inline Real quad_tanh_sinh(const EndpointIntegrand& f, const Real& lo, const Real& hi, const Real& tol,
                           int max_level = 12) {
    const int p = working_digits();
    const Real half = (hi - lo) / 2;
    const Real pi2 = const_pi() / 2;
    // Abscissae closer to an endpoint than 10^-(p+5) of the half-width carry no weight.
    const Real smax = Real(p + 5) * log(Real(10)) / 2;
    const Real tmax = asinh(smax / pi2);

    auto contribution = [&](const Real& t) {
        Real s = pi2 * sinh(t);
        Real e = exp(-2 * abs(s));
        Real d = 2 * e / (1 + e);  // 1 - tanh|s|
        Real ch = cosh(s);
        Real w = pi2 * cosh(t) / (ch * ch);
        Real dist = half * d;
        Real from_lo, from_hi, x;
        if (s < 0) {
            from_lo = dist;
            from_hi = 2 * half - dist;
            x = lo + dist;
        } else {
            from_hi = dist;
            from_lo = 2 * half - dist;
            x = hi - dist;
        }
        return w * f(x, from_lo, from_hi);
    };

    Real h = 1;
    Real sum = contribution(Real(0));
    for (Real t = h; t <= tmax; t += h) sum += contribution(t) + contribution(-t);
    Real estimate = sum * h * half;
    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        Real add = 0;
        for (Real t = h; t <= tmax; t += 2 * h) add += contribution(t) + contribution(-t);
        sum += add;
        Real next = sum * h * half;
        Real diff = abs(next - estimate);
        estimate = next;
        if (level >= 3 && diff <= tol) return estimate;
    }
    throw ConvergenceError("quad_adaptive: tolerance unreachable at maximum refinement");
}

inline Real quad_adaptive(const std::function<Real(const Real&)>& f, const Real& lo, const Real& hi,
                          const Real& tol) {
    return quad_tanh_sinh([&](const Real& x, const Real&, const Real&) { return f(x); }, lo, hi, tol);
}

// ---------------------------------------------------------------- roots

// Newton iteration for an analytic map; fd returns (f(z), f'(z)).
inline CReal newton_solve(const std::function<std::pair<CReal, CReal>(const CReal&)>& fd, CReal z,
                          const Real& tol, int max_iter = 200) {
    Real prev_res = infinity();
    int stalls = 0;
    for (int it = 0; it < max_iter; ++it) {
        auto [f, d] = fd(z);
        Real res = abs(f);
        if (res <= tol) {
            // one more step squares the error of a converged iterate
            if (!(d.re.is_zero() && d.im.is_zero())) z = z - f / d;
            return z;
        }
        if (!(res < prev_res)) {
            if (++stalls > 6) break;
        }
        prev_res = res;
        if (d.re.is_zero() && d.im.is_zero()) break;
        z = z - f / d;
    }
    throw RootNotFound("newton_solve: no convergence", z);
}

// Safeguarded Newton on a sign-changing bracket [lo, hi]; falls back to
// bisection whenever the Newton step leaves the bracket or stalls.
inline Real newton_bracketed(const std::function<std::pair<Real, Real>(const Real&)>& fd, Real lo, Real hi,
                             Real x, const Real& tol, const Real& xtol, int max_iter = 2000) {
    auto [flo, dlo] = fd(lo);
    if (flo.is_zero()) return lo;
    auto [fhi, dhi] = fd(hi);
    if (fhi.is_zero()) return hi;
    if (flo.sign() == fhi.sign()) throw RootNotFound("newton_bracketed: no sign change", CReal(x));
    if (flo.sign() > 0) std::swap(lo, hi);  // now f(lo) < 0 < f(hi)
    if (!((x > min(lo, hi)) && (x < max(lo, hi)))) x = (lo + hi) / 2;
    Real dxold = abs(hi - lo), dx = dxold;
    auto [f, d] = fd(x);
    for (int it = 0; it < max_iter; ++it) {
        if (abs(f) <= tol) return x;
        bool out = ((x - hi) * d - f) * ((x - lo) * d - f) > 0;
        if (out || abs(2 * f) > abs(dxold * d)) {
            dxold = dx;
            dx = (hi - lo) / 2;
            x = lo + dx;
        } else {
            dxold = dx;
            dx = f / d;
            x -= dx;
        }
        if (abs(dx) <= xtol) return x;
        std::tie(f, d) = fd(x);
        if (f.sign() < 0) lo = x;
        else hi = x;
    }
    throw RootNotFound("newton_bracketed: no convergence", CReal(x));
}

}  // namespace ferrers
