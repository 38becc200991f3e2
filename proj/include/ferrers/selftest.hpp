#pragma once
// Invariant checks across all modules, run by the command-line self-test.

#include "coeffs.hpp"
#include "legendre.hpp"
#include "numerics.hpp"
#include "oracle.hpp"
#include "pcf.hpp"
#include "tpgeom.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ferrers {

struct CheckOutcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    std::string module, name;
    std::function<CheckOutcome()> run;
};

struct CheckResult {
    std::string module, name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline CheckOutcome bound(const Real& err, const Real& tol) {
    std::ostringstream os;
    os << "err " << err.str(3) << " tol " << tol.str(2);
    return {err <= tol, os.str()};
}

inline Real relerr(const Real& a, const Real& b) { return abs(a - b) / max(abs(b), Real(1e-300)); }

// Tolerance that tracks the working precision p as 10^{k-p}.
inline Real tol_p(int k) { return pow10(k - working_digits()); }

}  // namespace detail

inline std::vector<Check> self_checks() {
    using detail::bound;
    using detail::relerr;
    using detail::tol_p;
    std::vector<Check> c;

    // numerics
    c.push_back({"numerics", "log_gamma_half", [] {
                     return bound(relerr(log_gamma(Real(0.5)), log(const_pi()) / 2), tol_p(2));
                 }});
    c.push_back({"numerics", "gamma_reflection", [] {
                     return bound(relerr(gamma(Real(-0.5)), -2 * sqrt(const_pi())), tol_p(2));
                 }});
    c.push_back({"numerics", "bernoulli_12", [] {
                     bool ok = bernoulli(12) == Rational(-691, 2730);
                     return CheckOutcome{ok, ok ? "exact" : "mismatch"};
                 }});

    // tpgeom
    c.push_back({"tpgeom", "zeta_at_turning_point", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     return bound(abs(zeta(p, p.a).zeta.re - p.alpha), tol_p(3));
                 }});
    c.push_back({"tpgeom", "zeta_odd", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real e = 0;
                     for (const char* xs : {"0.2", "0.7", "0.95"}) {
                         Real x(xs);
                         e = max(e, relerr(-zeta(p, -x).zeta.re, zeta(p, x).zeta.re));
                     }
                     return bound(e, tol_p(3));
                 }});
    c.push_back({"tpgeom", "series_matches_newton", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real x = p.a + Real("0.079");
                     Real s = zeta_taylor(p, CReal(x), SeriesCenter::turning_point).re;
                     return bound(relerr(s, detail::zeta_real_right(p, x)), tol_p(5));
                 }});

    // coeffs
    c.push_back({"coeffs", "zero_constant_terms", [] {
                     const auto& t = coeff_tables();
                     for (const auto* list : {&t.E, &t.e, &t.et})
                         for (const auto& q : *list)
                             for (int j = 0; j <= q.degree_A(); ++j)
                                 if (q.coeff(0, j) != 0) return CheckOutcome{false, "nonzero constant term"};
                     return CheckOutcome{true, "exact"};
                 }});
    c.push_back({"coeffs", "second_is_first_recursion_step", [] {
                     bool ok = seed_E2() == Rational(1, 2) * (legendre_G() * seed_E1().derivative()) &&
                               seed_e2() == Rational(1, 2) * (pcf_G() * seed_e1().derivative()) &&
                               seed_etilde2() == Rational(1, 2) * (pcf_G() * seed_etilde1().derivative());
                     return CheckOutcome{ok, ok ? "exact" : "mismatch"};
                 }});
    c.push_back({"coeffs", "degree_grows_by_three", [] {
                     const auto& t = coeff_tables();
                     for (int s = 1; s < default_max_s; ++s)
                         if (t.E[s].degree() != t.E[s - 1].degree() + 3)
                             return CheckOutcome{false, "degree step at s=" + std::to_string(s + 1)};
                     return CheckOutcome{true, "exact"};
                 }});
    c.push_back({"coeffs", "d_constants_at_zero", [] {
                     bool ok = d_constant(1, Rational(0)) == Rational(-3, 32) &&
                               d_constant(3, Rational(0)) == Rational(3, 1024);
                     return CheckOutcome{ok, ok ? "exact" : "mismatch"};
                 }});

    // pcf
    c.push_back({"pcf", "gaussian_case", [] {
                     Real x("1.3");
                     return bound(relerr(pcf_eval(Real(-0.5), x).U, exp(-x * x / 4)), tol_p(3));
                 }});
    c.push_back({"pcf", "wronskians_and_parity", [] {
                     std::mt19937_64 rng(3);
                     std::uniform_real_distribution<double> db(-40, 40), dx(-18, 18);
                     Real e = 0;
                     for (int i = 0; i < 20; ++i) e = max(e, pcf_connection_check(Real(db(rng)), Real(dx(rng))));
                     for (int n = 0; n <= 5; ++n) e = max(e, pcf_connection_check(Real(-n) - Real(0.5), Real(1.7)));
                     return bound(e, tol_p(6));
                 }});
    c.push_back({"pcf", "series_cancellation_guard", [] {
                     // the unboosted series at x = 5 loses a few digits; it must
                     // either keep p-8 of them or refuse
                     PcfValue v = pcf_eval_unboosted(Real(-0.5), Real(5));
                     return bound(relerr(v.U, exp(Real(-25) / 4)), tol_p(8));
                 }});

    // oracle
    c.push_back({"oracle", "trivial_degree_and_order", [] {
                     return bound(abs(ferrers_P_ref(Real(0), Real(0), Real("0.3")).value - 1), tol_p(1));
                 }});
    c.push_back({"oracle", "wronskian_constant", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     auto w = [&](const Real& x) {
                         RefValue P = ferrers_P_ref(p, x), Q = ferrers_Q_ref(p, x);
                         return (1 - x * x) * (P.value * Q.deriv - P.deriv * Q.value);
                     };
                     return bound(relerr(w(Real("0.2")), legendre_wronskian_constant(p.nu, p.mu)), tol_p(3));
                 }});
    c.push_back({"oracle", "dual_P_oracles", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real x("0.3");
                     return bound(relerr(ferrers_P_ode_ref(p.nu, p.mu, x).value, ferrers_P_ref(p, x).value), tol_p(3));
                 }});

    // legendre
    c.push_back({"legendre", "A2_at_origin", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real A = p.alpha2;
                     Real expect = Real(-1) / (8 * (4 - A) * (4 - A));
                     return bound(relerr(ab_coefficients(p, CReal(0)).A[1].re, expect), tol_p(3));
                 }});
    c.push_back({"legendre", "A2_at_turning_point", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     return bound(abs(taylor_table(p)->A[1][0] - Real("-0.0091223906")), Real("1e-9"));
                 }});
    c.push_back({"legendre", "expansion_vs_exact", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real x("0.8");
                     return bound(relerr(ab_expansion(p, CReal(x)).A.re, ab_exact_ref(p, x).A.re), Real("1e-12"));
                 }});
    c.push_back({"legendre", "taylor_expansion_continuity", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real x = p.a + Real("0.079");
                     Real t = eval_ferrers(p, x, FerrersKind::P, max_terms, AbRoute::taylor).value;
                     Real e = eval_ferrers(p, x, FerrersKind::P, max_terms, AbRoute::expansion).value;
                     return bound(relerr(t, e), Real("1e-12"));
                 }});
    c.push_back({"legendre", "P_vs_oracle", [] {
                     Params p = make_params(Real(50), Real("0.5"));
                     Real x("0.2");
                     Real M = envelope(p, x).M;
                     return bound(abs(eval_P(p, x) - ferrers_P_ref(p, x).value) / M, Real("1e-13"));
                 }});
    c.push_back({"legendre", "q_zero", [] {
                     auto q = q_zero(make_params(Real(50), Real("0.5")));
                     if (!q) return CheckOutcome{false, "no zero found"};
                     return bound(abs(*q - Real("0.42542")), Real("5e-5"));
                 }});
    return c;
}

// Runs the checks whose module matches the filter (empty: all) at the
// current working precision; exceptions count as failures.
inline std::vector<CheckResult> run_self_checks(const std::string& filter = "") {
    std::vector<CheckResult> out;
    for (const auto& ch : self_checks()) {
        if (!filter.empty() && ch.module != filter) continue;
        CheckResult r{ch.module, ch.name, false, ""};
        try {
            CheckOutcome o = ch.run();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        out.push_back(r);
    }
    return out;
}

inline std::vector<std::string> self_check_modules() {
    std::vector<std::string> m;
    for (const auto& ch : self_checks())
        if (m.empty() || m.back() != ch.module) m.push_back(ch.module);
    return m;
}

}  // namespace ferrers
