#include <ferrers/oracle.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace ferrers;

namespace {

Real rel(const Real& a, const Real& b) { return abs(a - b) / max(abs(b), Real(1e-300)); }

Real legendre_wronskian(const Real& nu, const Real& mu, const Real& x) {
    RefValue P = ferrers_P_ref(nu, mu, x), Q = ferrers_Q_ref(nu, mu, x);
    return (1 - x * x) * (P.value * Q.deriv - P.deriv * Q.value);
}

}  // namespace

TEST(Oracle, TrivialDegreeAndOrder) {
    PrecisionScope ps(40);
    for (const char* xs : {"-0.9", "0", "0.3", "0.99"}) {
        RefValue r = ferrers_P_ref(Real(0), Real(0), Real(xs));
        EXPECT_EQ(r.value, Real(1));
        EXPECT_TRUE(r.deriv.is_zero());
    }
}

TEST(Oracle, LowDegreeClosedForms) {
    PrecisionScope ps(40);
    Real x("0.37");
    Real s = sqrt(1 - x * x);
    // P_1^{-1} = sqrt(1-x^2)/2, P_2 = (3x^2-1)/2, Q_0 = atanh x, Q_1^{-1} = ... via Wronskian below
    EXPECT_LT(rel(ferrers_P_ref(Real(1), Real(1), x).value, s / 2), Real("1e-39"));
    EXPECT_LT(rel(ferrers_P_ref(Real(2), Real(0), x).value, (3 * x * x - 1) / 2), Real("1e-39"));
    EXPECT_LT(rel(ferrers_P_ref(Real(2), Real(0), x).deriv, 3 * x), Real("1e-39"));
    EXPECT_LT(rel(ferrers_Q_ref(Real(0), Real(0), x).value, atanh(x)), Real("1e-38"));
    EXPECT_LT(rel(ferrers_Q_ref(Real(0), Real(0), x).deriv, 1 / (1 - x * x)), Real("1e-38"));
    EXPECT_LT(rel(ferrers_Q_ref(Real(1), Real(0), x).value, x * atanh(x) - 1), Real("1e-38"));
    // P^{+1}_1 = -sqrt(1-x^2)
    EXPECT_LT(rel(ferrers_P_pos_ref(Real(1), Real(1), x).value, -s), Real("1e-39"));
}

TEST(Oracle, EndpointBehaviour) {
    PrecisionScope ps(40);
    Real nu(50), mu("43.7"), t("1e-8");
    // P^{-mu}(1 - t) ~ (t/2)^{mu/2}/Gamma(mu+1)
    Real lead = exp(mu / 2 * log(t / 2) - log_gamma(mu + 1));
    EXPECT_LT(rel(ferrers_P_ref(nu, mu, 1 - t).value, lead), Real("1e-4"));
}

TEST(Oracle, WronskianIsConstant) {
    PrecisionScope ps(40);
    Params p = make_params(Real(50), Real("0.5"));
    Real w1 = legendre_wronskian(p.nu, p.mu, Real("0.2"));
    Real w2 = legendre_wronskian(p.nu, p.mu, Real("0.6"));
    EXPECT_LT(rel(w1, w2), Real("1e-25"));
    EXPECT_LT(rel(w1, legendre_wronskian_constant(p.nu, p.mu)), Real("1e-25"));
}

TEST(Oracle, WronskianNearIntegerOrder) {
    PrecisionScope ps(40);
    for (const char* ms : {"3", "3.0000000001", "2.9999993", "3.01"}) {
        Real nu("12.4"), mu(ms);
        Real w = legendre_wronskian(nu, mu, Real("0.35"));
        EXPECT_LT(rel(w, legendre_wronskian_constant(nu, mu)), Real("1e-25")) << ms;
    }
}

TEST(Oracle, QContinuousAcrossIntegerThreshold) {
    PrecisionScope ps(40);
    Real nu("12.4"), x("0.35");
    Real below = ferrers_Q_ref(nu, Real(3) + Real("0.9e-6"), x).value;
    Real above = ferrers_Q_ref(nu, Real(3) + Real("1.1e-6"), x).value;
    Real slope = (ferrers_Q_ref(nu, Real("3.001"), x).value - ferrers_Q_ref(nu, Real("2.999"), x).value) / Real("0.002");
    EXPECT_LT(abs(above - below - slope * Real("0.2e-6")), abs(below) * Real("1e-10"));
}

TEST(Oracle, DualPOraclesAgree) {
    PrecisionScope ps(40);
    Params p = make_params(Real(50), Real("0.5"));
    RefValue h = ferrers_P_ref(p, Real("0.3"));
    RefValue o = ferrers_P_ode_ref(p.nu, p.mu, Real("0.3"));
    EXPECT_LT(rel(o.value, h.value), Real("1e-25"));
    EXPECT_LT(rel(o.deriv, h.deriv), Real("1e-25"));
}

TEST(Oracle, DualPOraclesAgreeAtRandomPoints) {
    PrecisionScope ps(40);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dnu(10, 120), da(0.05, 0.95), dx(-0.9, 0.98);
    for (int i = 0; i < 50; ++i) {
        Params p = make_params(Real(dnu(rng)), Real(da(rng)));
        Real x(dx(rng));
        RefValue h = ferrers_P_ref(p, x);
        RefValue o = ferrers_P_ode_ref(p.nu, p.mu, x);
        // envelope-relative: P may sit near a zero
        Real scale = max(abs(h.value), abs(h.deriv) * sqrt(1 - x * x) / p.u);
        EXPECT_LT(abs(o.value - h.value) / scale, Real("1e-25")) << p.nu << " " << p.a << " " << x;
    }
}

TEST(Oracle, QZeroBracket) {
    PrecisionScope ps(40);
    Params p = make_params(Real(50), Real("0.5"));
    Real q1 = ferrers_Q_ref(p, Real("0.42")).value, q2 = ferrers_Q_ref(p, Real("0.43")).value;
    EXPECT_LT(q1 * q2, 0);
    // single-signed beyond the last zero
    for (int i = 44; i < 99; i += 5) EXPECT_EQ(signbit(ferrers_Q_ref(p, Real(i) / 100).value), signbit(q2)) << i;
}

TEST(Oracle, PcfOdeGaussian) {
    PrecisionScope ps(40);
    for (int i = 0; i <= 30; i += 3) {
        Real x = Real(i) / 10;
        PcfValue v = pcf_ode_ref(Real("-0.5"), x);
        EXPECT_LT(abs(v.U - exp(-x * x / 4)), Real("1e-25")) << x;
    }
}

TEST(Oracle, PcfOdeWronskian) {
    PrecisionScope ps(40);
    Real b("1.2"), x("0.9");
    PcfValue p = pcf_ode_ref(-b, x), m = pcf_ode_ref(-b, -x);
    Real w = -p.U * m.Uprime - p.Uprime * m.U;
    EXPECT_LT(rel(w, sqrt(2 * const_pi()) / gamma(Real("0.5") - b)), Real("1e-25"));
    PcfValue v = pcf_ode_ref(b, x);
    EXPECT_LT(rel(pcf_wronskian_uv(v), sqrt(2 / const_pi())), Real("1e-25"));
}

TEST(Oracle, PcfOdeMatchesSeries) {
    PrecisionScope ps(40);
    Params p = make_params(Real(50), Real("0.5"));
    PcfValue o = pcf_ode_ref(p.b, Real("1.3")), s = pcf_eval(p.b, Real("1.3"));
    EXPECT_LT(rel(o.U, s.U), Real("1e-25"));
    EXPECT_LT(rel(o.Uprime, s.Uprime), Real("1e-25"));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> db(-30, 30), dx(-12, 12);
    for (int i = 0; i < 20; ++i) {
        Real b(db(rng)), x(dx(rng));
        PcfValue a = pcf_ode_ref(b, x), c = pcf_eval(b, x);
        Real su = max(abs(c.U), abs(c.Uprime)), sv = max(abs(c.V), abs(c.Vprime));
        EXPECT_LT(abs(a.U - c.U) / su, Real("1e-25")) << b << " " << x;
        EXPECT_LT(abs(a.V - c.V) / sv, Real("1e-25")) << b << " " << x;
    }
}

TEST(Oracle, ExactCoefficientsAreConsistent) {
    PrecisionScope ps(40);
    Params p = make_params(Real(50), Real("0.5"));
    for (const char* xs : {"0.2", "0.5", "0.8", "-0.3"}) {
        Real x(xs);
        AbPair r = ab_exact_ref(p, x, ExactForm::reflection);
        AbPair q = ab_exact_ref(p, x, ExactForm::pq);
        EXPECT_TRUE(r.A.im.is_zero());
        EXPECT_TRUE(r.B.im.is_zero());
        EXPECT_LT(rel(r.A.re, q.A.re), Real("1e-25")) << xs;
        EXPECT_LT(rel(r.B.re, q.B.re), Real("1e-25")) << xs;
        // reproduce P from the representation
        TpPoint t = zeta(p, x);
        Real c = sqrt(2 * p.u);
        PcfValue v = pcf_eval(p.b, c * t.zeta.re);
        Real P = sqrt(2 / const_pi()) * (v.U * r.A.re + c * v.Uprime * r.B.re);
        EXPECT_LT(rel(P, ferrers_P_ref(p, x).value), Real("1e-25")) << xs;
    }
    AbPair tp = ab_exact_ref(p, Real("0.5"));
    Real ratio = abs(tp.B.re / tp.A.re) * p.u * p.u;
    EXPECT_LT(ratio, Real(10));
}
