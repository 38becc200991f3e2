#include <ferrers/legendre.hpp>
#include <gtest/gtest.h>

#include <algorithm>

using namespace ferrers;

namespace {

Real rel(const Real& a, const Real& b) { return abs(a - b) / max(abs(b), Real(1e-300)); }
Real crel(const CReal& a, const CReal& b) { return abs(a - b) / max(abs(b), Real(1e-300)); }

Params p50(const char* a) { return make_params(Real(50), Real(a)); }

}  // namespace

TEST(Coefficients, OriginValues) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    AbCoefficients c = ab_coefficients(p, CReal(0));
    Real A = p.alpha2;
    Real expect = Real(-1) / (8 * (4 - A) * (4 - A));
    EXPECT_LT(rel(c.A[1].re, expect), Real("1e-30"));
    EXPECT_NEAR(c.A[1].re.to_double(), -0.0089745963, 1e-10);
    EXPECT_LT(abs(c.B[0]), Real("1e-30"));
    EXPECT_LT(abs(c.A[1].im), Real("1e-30"));
}

TEST(Coefficients, OriginSlopes) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    Real h("0.001");
    AbCoefficients c0 = ab_coefficients(p, CReal(0)), c1 = ab_coefficients(p, CReal(h)),
                   c2 = ab_coefficients(p, CReal(2 * h));
    Real A = p.alpha2, al = p.alpha, a = p.a;
    // B_0 = alpha^3/(64 a^3) z + ... ; A_2 = A_2(0) - 19 alpha^2 / (128 (4-alpha^2)^3) z^2 + ...
    Real b1 = (8 * c1.B[0].re - c2.B[0].re) / (6 * h);  // removes the z^3 term
    EXPECT_LT(rel(b1, pow(al, 3) / (64 * pow(a, 3))), Real("1e-8"));
    Real a2 = (c1.A[1].re - c0.A[1].re) / (h * h);
    EXPECT_LT(rel(a2, -19 * A / (128 * pow(4 - A, 3))), Real("1e-4"));
}

TEST(Coefficients, TaylorTableAtTurningPoint) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    auto tab = taylor_table(p);
    EXPECT_NEAR(tab->A[1][0].to_double(), -0.0091223906, 5e-11);
    // the published linear coefficient is truncated, not rounded
    EXPECT_NEAR(tab->A[1][1].to_double(), -0.00034392390, 2e-11);
    EXPECT_NEAR(tab->A[1][2].to_double(), 0.0010293232, 5e-11);
    EXPECT_LE(tab->singular_ratio, pow10(12 - 40));
    EXPECT_LE(tab->alias_ratio, pow10(-40));
}

TEST(Coefficients, TaylorTableStableInPrecision) {
    Real lo, hi;
    {
        PrecisionScope ps(40);
        lo = taylor_table(p50("0.5"))->A[2][3];
    }
    {
        PrecisionScope ps(60);
        hi = taylor_table(p50("0.5"))->A[2][3];
    }
    EXPECT_LT(rel(lo, hi), Real("1e-30"));
}

TEST(AbPairs, ExpansionMatchesExact) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    AbPair e = ab_expansion(p, CReal(Real("0.8")));
    AbPair x = ab_exact_ref(p, Real("0.8"));
    EXPECT_LT(rel(e.A.re, x.A.re), Real("1e-12"));
    EXPECT_LT(rel(e.B.re, x.B.re), Real("1e-12"));
    EXPECT_LT(abs(e.A.im), pow10(6 - 40) * abs(e.A.re));
}

TEST(AbPairs, TaylorMatchesExactAtTurningPoint) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    AbPair t = ab_taylor(p, CReal(p.a));
    AbPair x = ab_exact_ref(p, p.a);
    EXPECT_LT(rel(t.A.re, x.A.re), Real("1e-10"));
    EXPECT_LT(rel(t.B.re, x.B.re), Real("1e-10"));
    // B/A = O(u^{-2})
    EXPECT_LT(abs(x.B.re / x.A.re) * p.u * p.u, Real(10));
}

TEST(AbPairs, ExactformScaleOfB) {
    PrecisionScope ps(40);
    Real r50, r100;
    for (const char* nus : {"50", "100"}) {
        Params p = make_params(Real(nus), Real("0.5"));
        AbPair e = ab_expansion(p, CReal(Real("0.8")));
        Real r = abs(e.B.re / e.A.re);
        (std::string(nus) == "50" ? r50 : r100) = r;
    }
    Real expect = pow(Real("100.5") / Real("50.5"), 2);
    EXPECT_NEAR((r50 / r100).to_double(), expect.to_double(), 0.1 * expect.to_double());
}

TEST(AbPairs, MethodsAgreeInOverlap) {
    PrecisionScope ps(40);
    for (const char* as : {"0.1", "0.5"}) {
        Params p = p50(as);
        for (const char* ds : {"0.045", "0.06", "0.075", "-0.05", "-0.07"}) {
            Real x = p.a + Real(ds);
            AbPair t = ab_taylor(p, CReal(x)), e = ab_expansion(p, CReal(x));
            EXPECT_LT(crel(t.A, e.A), Real("1e-10")) << as << " " << ds;
            EXPECT_LT(crel(t.B, e.B), Real("1e-10")) << as << " " << ds;
            EXPECT_LT(crel(t.dA, e.dA), Real("1e-10")) << as << " " << ds;
            EXPECT_LT(crel(t.dB, e.dB), Real("1e-10")) << as << " " << ds;
        }
    }
}

TEST(AbPairs, ContourAgreesWithOtherPaths) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    ContourData c7 = make_contour(p, 4, Real("0.7")), c8 = make_contour(p, 4, Real("0.8"));
    for (const char* xs : {"0.2", "0.5", "0.62"}) {
        CReal z{Real(xs)};
        AbPair a = ab_contour(c7, z), b = ab_contour(c8, z);
        EXPECT_LT(crel(a.A, b.A), Real("1e-10")) << xs;
        EXPECT_LT(crel(a.B, b.B), Real("1e-10")) << xs;
    }
    AbPair c = ab_contour(c8, CReal(p.a)), t = ab_taylor(p, CReal(p.a));
    EXPECT_LT(crel(c.A, t.A), Real("1e-10"));
    EXPECT_LT(crel(c.B, t.B), Real("1e-10"));
    EXPECT_LT(crel(c.dA, t.dA), Real("1e-10"));
    AbPair e = ab_expansion(p, CReal(Real("0.65"))), ce = ab_contour(c8, CReal(Real("0.65")));
    EXPECT_LT(crel(ce.A, e.A), Real("1e-10"));
    EXPECT_LT(crel(ce.dB, e.dB), Real("1e-10"));
    CReal z(Real("0.3"), Real("0.1"));
    AbPair u = ab_contour(c8, z), l = ab_contour(c8, conj(z));
    EXPECT_LT(crel(l.A, conj(u.A)), Real("1e-25"));
    EXPECT_LT(crel(l.B, conj(u.B)), Real("1e-25"));
    EXPECT_THROW(make_contour(p, 4, Real("0.55")), GeometryError);
    EXPECT_THROW(ab_contour(c7, CReal(Real("0.75"))), GeometryError);
}

TEST(AbPairs, ComplexExpansionMatchesContour) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    ContourData c8 = make_contour(p, 4, Real("0.8"));
    CReal z(Real("0.6"), Real("0.15"));
    AbPair e = ab_expansion(p, z), c = ab_contour(c8, z);
    EXPECT_LT(crel(e.A, c.A), Real("1e-10"));
    EXPECT_LT(crel(e.B, c.B), Real("1e-10"));
}

TEST(Ferrers, MatchesOracleAtPoint) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    auto q = q_zero(p);
    for (const char* xs : {"0.2", "0.5", "0.47", "0.9", "-0.3", "-0.55"}) {
        Real x(xs);
        Real M = envelope(p, abs(x), q).M;
        if (x < 0) M = max(M, abs(ferrers_P_ref(p, x).value));
        EXPECT_LT(abs(eval_P(p, x) - ferrers_P_ref(p, x).value) / M, Real("1e-13")) << xs;
    }
}

TEST(Ferrers, QMatchesOracle) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    auto q = q_zero(p);
    for (const char* xs : {"0.1", "0.5", "0.8"}) {
        Real x(xs);
        Real Mq = sqrt(pow(ferrers_P_ref(p, x).value * const_pi() / 2, 2) + pow(ferrers_Q_ref(p, x).value, 2));
        EXPECT_LT(abs(eval_Q(p, x) - ferrers_Q_ref(p, x).value) / Mq, Real("1e-13")) << xs;
    }
    (void)q;
}

TEST(Ferrers, EndpointBehaviour) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    Real x1("0.99"), x2("0.998");
    Real slope = (log(eval_P(p, x2)) - log(eval_P(p, x1))) / (log(1 - x2) - log(1 - x1));
    Real ref = (log(ferrers_P_ref(p, x2).value) - log(ferrers_P_ref(p, x1).value)) / (log(1 - x2) - log(1 - x1));
    EXPECT_LT(rel(slope, ref), Real("1e-10"));
    // the local exponent tends to mu/2 as x -> 1
    EXPECT_LT(abs(slope - p.mu / 2), Real(1));
    EXPECT_THROW(eval_P(p, Real("0.9995")), DomainError);
}

TEST(Ferrers, DerivativeMatchesFiniteDifference) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    Real x("0.7"), h("1e-6");
    auto fd = [&](const Real& hh) { return (eval_P(p, x + hh) - eval_P(p, x - hh)) / (2 * hh); };
    Real rich = (4 * fd(h / 2) - fd(h)) / 3;
    EXPECT_LT(rel(eval_P_prime(p, x), rich), Real("1e-8"));
    EXPECT_LT(rel(eval_P_prime(p, x), ferrers_P_ref(p, x).deriv), Real("1e-12"));
}

TEST(Ferrers, ParityAtOrigin) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    Real h("1e-6");
    Real neg_slope = (eval_P_neg(p, h) - eval_P_neg(p, -h)) / (2 * h);
    Real d0 = eval_P_prime(p, Real(0));
    EXPECT_LT(abs(neg_slope + d0) / abs(d0), Real("1e-8"));
    EXPECT_EQ(eval_P_neg(p, Real("0.3")), eval_P(p, Real("-0.3")));
}

TEST(Ferrers, WronskianConstant) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    auto w = [&](const Real& x) {
        FerrersValue P = eval_ferrers(p, x, FerrersKind::P), Q = eval_ferrers(p, x, FerrersKind::Q);
        return (1 - x * x) * (P.value * Q.deriv - P.deriv * Q.value);
    };
    Real w1 = w(Real("0.2")), w2 = w(Real("0.8"));
    EXPECT_LT(rel(w1, w2), Real("1e-10"));
    EXPECT_LT(rel(w1, legendre_wronskian_constant(p.nu, p.mu)), Real("1e-10"));
}

TEST(Ferrers, RealityOfCoefficients) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    for (const char* xs : {"0", "0.2", "0.44", "0.5", "0.58", "0.9"}) {
        FerrersValue v = eval_ferrers(p, Real(xs), FerrersKind::P);
        EXPECT_LE(v.imag_residual, pow10(6 - 40)) << xs;
    }
}

TEST(Ferrers, TruncationScale) {
    PrecisionScope ps(40);
    // A(u) - 1 = O(u^{-2}) at fixed a, x
    Real e1, e2;
    for (int nu : {200, 400}) {
        Params p = make_params(Real(nu), Real("0.5"));
        AbPair ab = ab_expansion(p, CReal(Real("0.8")), 4);
        TpPoint t = zeta(p, Real("0.8"));
        Real pre = exp(detail::log_prefactor(p)) * sqrt(sqrt(t.R.re));
        Real dev = abs(ab.A.re / pre - 1);
        (nu == 200 ? e1 : e2) = dev;
    }
    Real slope = log(e1 / e2) / log(Real("400.5") / Real("200.5"));
    EXPECT_NEAR(slope.to_double(), 2.0, 0.05);
}

TEST(Envelope, QZeroLocation) {
    PrecisionScope ps(40);
    auto q = q_zero(p50("0.5"));
    ASSERT_TRUE(q.has_value());
    EXPECT_NEAR(q->to_double(), 0.42542, 5e-5);
    EXPECT_FALSE(q_zero(p50("0.1")).has_value());
}

TEST(Envelope, OmegaOverGrid) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    std::vector<Real> xs;
    for (int i = 0; i <= 18; ++i) xs.push_back(Real(i) / 20);
    auto rows = error_plot(p, xs, 4, 4);
    Real worst = -infinity();
    for (const auto& r : rows) worst = max(worst, r.omega);
    EXPECT_LE(worst, Real(-13));
    for (size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].x, xs[i]);
}

TEST(Envelope, OmegaImprovesWithTerms) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    std::vector<Real> xs;
    for (int i = 0; i <= 18; i += 2) xs.push_back(Real(i) / 20);
    double prev = 1e9;
    for (int n = 2; n <= 4; ++n) {
        auto rows = error_plot(p, xs, n, 4);
        std::vector<double> om;
        for (const auto& r : rows) om.push_back(r.omega.to_double());
        std::nth_element(om.begin(), om.begin() + om.size() / 2, om.end());
        double med = om[om.size() / 2];
        EXPECT_LT(med, prev) << n;
        prev = med;
    }
}

TEST(Ferrers, RoutesAgreeAtZoneEdge) {
    PrecisionScope ps(40);
    for (const char* as : {"0.1", "0.5"}) {
        Params p = p50(as);
        for (const char* ds : {"0.079", "-0.079"}) {
            Real x = p.a + Real(ds);
            Real t = eval_ferrers(p, x, FerrersKind::P, 4, AbRoute::taylor).value;
            Real e = eval_ferrers(p, x, FerrersKind::P, 4, AbRoute::expansion).value;
            EXPECT_LT(rel(t, e), Real("1e-12")) << as << " " << ds;
        }
    }
}

TEST(Ferrers, ContourRouteMatchesDefault) {
    PrecisionScope ps(40);
    Params p = p50("0.5");
    for (const char* xs : {"0.3", "0.5"}) {
        Real c = eval_ferrers(p, Real(xs), FerrersKind::P, 4, AbRoute::contour).value;
        EXPECT_LT(rel(c, eval_P(p, Real(xs))), Real("1e-10")) << xs;
    }
}

TEST(Envelope, OmegaMedianAndCoalescingCase) {
    PrecisionScope ps(40);
    for (const char* as : {"0.5", "0.1"}) {
        Params p = p50(as);
        std::vector<Real> xs;
        for (int i = 0; i <= 45; i += 3) xs.push_back(Real(i) / 50);
        auto rows = error_plot(p, xs, 4, 4);
        std::vector<double> om;
        for (const auto& r : rows) {
            om.push_back(r.omega.to_double());
            EXPECT_LE(r.omega, Real(-13)) << as << " " << r.x;
        }
        std::nth_element(om.begin(), om.begin() + om.size() / 2, om.end());
        EXPECT_LE(om[om.size() / 2], -15) << as;
        if (std::string(as) == "0.1")
            for (const auto& r : rows) EXPECT_EQ(r.M, r.p_ref);
    }
}
