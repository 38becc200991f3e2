#pragma once
// Exact generation of the Liouville-Green coefficient polynomials.
//
// Each coefficient is a polynomial in a rational variable x (beta for the
// Legendre equation, betahat for the comparison equation) whose coefficients
// are polynomials in a squared parameter A (a^2, resp. alpha^2). All
// arithmetic is in exact rationals; numbers only appear at evaluation time.

#include "numerics.hpp"

#include <ostream>
#include <vector>

namespace ferrers {

class CoeffPoly {
public:
    enum class Var { beta, betahat };

    CoeffPoly() = default;
    explicit CoeffPoly(Var v) : var_(v) {}

    // coefficient of x^k A^j
    Rational coeff(int k, int j) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
        if (j < 0 || j >= static_cast<int>(c_[k].size())) return 0;
        return c_[k][j];
    }
    void add_term(int k, int j, Rational q) {
        q.canonicalize();
        if (q == 0) return;
        if (static_cast<int>(c_.size()) <= k) c_.resize(k + 1);
        if (static_cast<int>(c_[k].size()) <= j) c_[k].resize(j + 1, Rational(0));
        c_[k][j] += q;
    }

    Var var() const { return var_; }
    int degree() const {
        for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
            for (const auto& q : c_[k])
                if (q != 0) return k;
        return -1;
    }
    int degree_A() const {
        int d = -1;
        for (const auto& row : c_)
            for (int j = static_cast<int>(row.size()) - 1; j > d; --j)
                if (row[j] != 0) { d = j; break; }
        return d;
    }
    bool is_zero() const { return degree() < 0; }

    friend CoeffPoly operator+(const CoeffPoly& p, const CoeffPoly& q) {
        CoeffPoly r(p.var_);
        for (int k = 0; k <= p.degree(); ++k)
            for (int j = 0; j <= p.degree_A(); ++j) r.add_term(k, j, p.coeff(k, j));
        for (int k = 0; k <= q.degree(); ++k)
            for (int j = 0; j <= q.degree_A(); ++j) r.add_term(k, j, q.coeff(k, j));
        return r;
    }
    friend CoeffPoly operator*(const CoeffPoly& p, const CoeffPoly& q) {
        CoeffPoly r(p.var_);
        for (int k1 = 0; k1 <= p.degree(); ++k1)
            for (int j1 = 0; j1 <= p.degree_A(); ++j1) {
                Rational a = p.coeff(k1, j1);
                if (a == 0) continue;
                for (int k2 = 0; k2 <= q.degree(); ++k2)
                    for (int j2 = 0; j2 <= q.degree_A(); ++j2) {
                        Rational b = q.coeff(k2, j2);
                        if (b != 0) r.add_term(k1 + k2, j1 + j2, a * b);
                    }
            }
        return r;
    }
    friend CoeffPoly operator*(const Rational& s, const CoeffPoly& p) {
        CoeffPoly r(p.var_);
        for (int k = 0; k <= p.degree(); ++k)
            for (int j = 0; j <= p.degree_A(); ++j) r.add_term(k, j, s * p.coeff(k, j));
        return r;
    }
    friend bool operator==(const CoeffPoly& p, const CoeffPoly& q) {
        int dk = std::max(p.degree(), q.degree()), dj = std::max(p.degree_A(), q.degree_A());
        for (int k = 0; k <= dk; ++k)
            for (int j = 0; j <= dj; ++j)
                if (p.coeff(k, j) != q.coeff(k, j)) return false;
        return true;
    }

    CoeffPoly derivative() const {
        CoeffPoly r(var_);
        for (int k = 1; k <= degree(); ++k)
            for (int j = 0; j <= degree_A(); ++j) r.add_term(k - 1, j, Rational(k) * coeff(k, j));
        return r;
    }
    // integral from 0 to x
    CoeffPoly integral() const {
        CoeffPoly r(var_);
        for (int k = 0; k <= degree(); ++k)
            for (int j = 0; j <= degree_A(); ++j) r.add_term(k + 1, j, coeff(k, j) / Rational(k + 1));
        return r;
    }

    // Exact value at rational (x, A).
    Rational at(const Rational& x, const Rational& A) const {
        Rational r = 0;
        for (int k = degree(); k >= 0; --k) {
            Rational ck = 0;
            for (int j = degree_A(); j >= 0; --j) ck = ck * A + coeff(k, j);
            r = r * x + ck;
        }
        return r;
    }

    // Coefficients in x after substituting a numeric A.
    std::vector<Real> at_A(const Real& A) const {
        std::vector<Real> out(std::max(degree() + 1, 0));
        for (int k = 0; k <= degree(); ++k) {
            Real ck = 0;
            for (int j = degree_A(); j >= 0; --j) ck = ck * A + to_real(coeff(k, j));
            out[k] = ck;
        }
        return out;
    }

    // One line per nonzero monomial: "s k j num/den".
    void dump(std::ostream& os, int s) const {
        for (int k = 0; k <= degree(); ++k)
            for (int j = 0; j <= degree_A(); ++j) {
                Rational q = coeff(k, j);
                if (q == 0) continue;
                os << s << ' ' << k << ' ' << j << ' ' << q.get_num() << '/' << q.get_den() << '\n';
            }
    }

private:
    Var var_ = Var::beta;
    std::vector<std::vector<Rational>> c_;
};

// Horner evaluation of numeric coefficients at a generic point.
template <class S>
S horner(const std::vector<Real>& c, const S& x) {
    S r = S(0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) r = r * x + c[k];
    return r;
}

namespace detail {

inline CoeffPoly poly_from(CoeffPoly::Var v, std::initializer_list<std::tuple<int, int, Rational>> terms) {
    CoeffPoly p(v);
    for (const auto& [k, j, q] : terms) p.add_term(k, j, q);
    return p;
}

// c_{s+1} = G c_s'/2 + (1/2) int_0^x G sum_{j=1}^{s-1} c_j' c_{s-j}' dp
inline std::vector<CoeffPoly> recurse(const CoeffPoly& G, CoeffPoly c1, CoeffPoly c2, int max_s) {
    std::vector<CoeffPoly> out{std::move(c1), std::move(c2)};
    const Rational half(1, 2);
    std::vector<CoeffPoly> d{out[0].derivative(), out[1].derivative()};
    for (int s = 2; s < max_s; ++s) {
        CoeffPoly next = half * (G * d[s - 1]);
        CoeffPoly sum(G.var());
        for (int j = 1; j <= s - 1; ++j) sum = sum + d[j - 1] * d[s - j - 1];
        next = next + half * (G * sum).integral();
        out.push_back(next);
        d.push_back(next.derivative());
    }
    out.resize(max_s);
    return out;
}

}  // namespace detail

// -beta-derivative kernels of the two recursions.
inline CoeffPoly legendre_G() {
    using V = CoeffPoly::Var;
    // beta (A beta + 2)(A(1-A) beta^2 + 2(1-A) beta - 1)
    CoeffPoly p1 = detail::poly_from(V::beta, {{1, 1, 1}, {0, 0, 2}});
    CoeffPoly p2 = detail::poly_from(V::beta, {{2, 1, 1}, {2, 2, -1}, {1, 0, 2}, {1, 1, -2}, {0, 0, -1}});
    return detail::poly_from(V::beta, {{1, 0, 1}}) * p1 * p2;
}

inline CoeffPoly pcf_G() {
    using V = CoeffPoly::Var;
    CoeffPoly p = detail::poly_from(V::betahat, {{2, 1, 1}, {1, 0, 2}});  // betahat (A betahat + 2)
    return p * p;
}

inline CoeffPoly seed_E1() {
    // beta (5 A^2 (1-A) beta^2 + 15 A (1-A) beta - 12 A + 9) / 24
    return detail::poly_from(CoeffPoly::Var::beta, {{3, 2, Rational(5, 24)},
                                                    {3, 3, Rational(-5, 24)},
                                                    {2, 1, Rational(15, 24)},
                                                    {2, 2, Rational(-15, 24)},
                                                    {1, 1, Rational(-12, 24)},
                                                    {1, 0, Rational(9, 24)}});
}

inline CoeffPoly seed_E2() {
    // G (5 A^2 (1-A) beta^2 + 10 A (1-A) beta - 4 A + 3) / 16
    CoeffPoly q = detail::poly_from(CoeffPoly::Var::beta,
                                    {{2, 2, 5}, {2, 3, -5}, {1, 1, 10}, {1, 2, -10}, {0, 1, -4}, {0, 0, 3}});
    return Rational(1, 16) * (legendre_G() * q);
}

inline CoeffPoly seed_e1() {
    return detail::poly_from(CoeffPoly::Var::betahat,
                             {{3, 2, Rational(5, 24)}, {2, 1, Rational(15, 24)}, {1, 0, Rational(9, 24)}});
}

inline CoeffPoly seed_e2() {
    CoeffPoly q = detail::poly_from(CoeffPoly::Var::betahat, {{2, 2, 5}, {1, 1, 10}, {0, 0, 3}});
    return Rational(1, 16) * (pcf_G() * q);
}

inline CoeffPoly seed_etilde1() {
    return detail::poly_from(CoeffPoly::Var::betahat,
                             {{3, 2, Rational(-7, 24)}, {2, 1, Rational(-21, 24)}, {1, 0, Rational(-15, 24)}});
}

inline CoeffPoly seed_etilde2() {
    CoeffPoly q = detail::poly_from(CoeffPoly::Var::betahat, {{2, 2, 7}, {1, 1, 14}, {0, 0, 5}});
    return Rational(-1, 16) * (pcf_G() * q);
}

inline std::vector<CoeffPoly> gen_leg_E(int max_s) {
    if (max_s < 2) throw RangeError("gen_leg_E: max_s must be at least 2");
    return detail::recurse(legendre_G(), seed_E1(), seed_E2(), max_s);
}

inline std::vector<CoeffPoly> gen_pcf_e(int max_s) {
    if (max_s < 2) throw RangeError("gen_pcf_e: max_s must be at least 2");
    return detail::recurse(pcf_G(), seed_e1(), seed_e2(), max_s);
}

inline std::vector<CoeffPoly> gen_pcf_etilde(int max_s) {
    if (max_s < 2) throw RangeError("gen_pcf_etilde: max_s must be at least 2");
    return detail::recurse(pcf_G(), seed_etilde1(), seed_etilde2(), max_s);
}

constexpr int default_max_s = 7;

// Tables generated once and shared read-only.
struct CoeffTables {
    std::vector<CoeffPoly> E, e, et;  // index s-1
};

inline const CoeffTables& coeff_tables() {
    static const CoeffTables t{gen_leg_E(default_max_s), gen_pcf_e(default_max_s), gen_pcf_etilde(default_max_s)};
    return t;
}

// Numeric snapshot of the tables at one (a^2, alpha^2).
struct NumericCoeffs {
    std::vector<std::vector<Real>> E, e, et;

    NumericCoeffs() = default;
    NumericCoeffs(const Real& a2, const Real& alpha2) {
        const auto& t = coeff_tables();
        for (int s = 0; s < default_max_s; ++s) {
            E.push_back(t.E[s].at_A(a2));
            e.push_back(t.e[s].at_A(alpha2));
            et.push_back(t.et[s].at_A(alpha2));
        }
    }
    int max_s() const { return static_cast<int>(E.size()); }
};

// ------------------------------------------------------------ d-constants

// d_{2s+1} as an exact rational function of A = alpha^2:
//   B_{2s+2} / ((2s+1)(2s+2)) * [ (2^{-2s-1} - 1)/2 * (2/(4-A))^{2s+1} - 1 ].
// It follows from the Stirling series of ln Gamma(u) and ln Gamma(w + 1/2),
// w = u(4 - A)/2, and reproduces the three published constants exactly.
inline Rational d_constant(int index, const Rational& A) {
    if (index < 1 || index % 2 == 0) throw RangeError("d_constant: index must be odd and positive");
    int s = (index - 1) / 2;
    Rational pre = bernoulli(2 * s + 2) / Rational((2 * s + 1) * (2 * s + 2));
    mpz_class two_pow = 1;
    two_pow <<= (2 * s + 1);
    Rational q = Rational(2) / (Rational(4) - A);
    Rational qp = 1;
    for (int k = 0; k < 2 * s + 1; ++k) qp *= q;
    Rational bracket = (Rational(1, 1) / Rational(two_pow) - 1) / 2 * qp - 1;
    return pre * bracket;
}

inline Real d_constant(int index, const Real& A) {
    if (index < 1 || index % 2 == 0) throw RangeError("d_constant: index must be odd and positive");
    int s = (index - 1) / 2;
    Real pre = to_real(bernoulli(2 * s + 2)) / Real((2 * s + 1) * (2 * s + 2));
    Real q = Real(2) / (Real(4) - A);
    Real bracket = (ldexp(Real(1), -(2 * s + 1)) - 1) / 2 * pow(q, 2 * s + 1) - 1;
    return pre * bracket;
}

struct DConstants {
    std::vector<Real> d;  // d[s] = d_{2s+1}
    const Real& operator()(int index) const { return d.at((index - 1) / 2); }
};

inline DConstants d_constants(const Real& alpha, int count = 4) {
    if (alpha < 0 || !(alpha * alpha < 2)) throw DomainError("d_constants: need 0 <= alpha < sqrt(2)");
    DConstants out;
    for (int s = 0; s < count; ++s) out.d.push_back(d_constant(2 * s + 1, alpha * alpha));
    return out;
}

// Half the log of the ratio of the two connection constants minus its first
// `terms` odd-power terms; decays like u^{-(2 terms + 1)}.
inline Real d_check(const Real& u, const Real& alpha, int terms = 3) {
    Real result;
    {
        PrecisionScope guard(working_digits() + 15);
        Real A = alpha * alpha;
        Real mu = u * (1 - A / 2);
        Real lr = log(Real(2)) / 2 + log(const_pi()) / 2 + (mu - u) + (2 * u - 1) * log(u) -
                  (u + mu) * log(u + mu) + log_gamma(u + mu + Real(0.5)) - 2 * log_gamma(u);
        result = lr / 2;
        for (int s = 0; s < terms; ++s) result -= d_constant(2 * s + 1, A) / pow(u, 2 * s + 1);
    }
    return result.rounded();
}

}  // namespace ferrers
