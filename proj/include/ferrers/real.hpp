#pragma once
// Extended-precision real built directly on MPFR.
//
// Every result is rounded to the calling thread's working precision, which is
// set with PrecisionScope. Copies keep the precision of their source, so a
// value computed at higher precision is not silently truncated by a copy.

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace ferrers {

inline mpfr_prec_t digits_to_bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 4;
}

namespace detail {
inline int& thread_digits() {
    thread_local int d = 40;
    return d;
}
}  // namespace detail

inline int working_digits() { return detail::thread_digits(); }
inline mpfr_prec_t working_bits() { return digits_to_bits(detail::thread_digits()); }

class PrecisionScope {
public:
    explicit PrecisionScope(int digits) : saved_(detail::thread_digits()) {
        if (digits < 10) digits = 10;
        detail::thread_digits() = digits;
    }
    ~PrecisionScope() { detail::thread_digits() = saved_; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_;
};

class Real {
public:
    Real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Real(I i) {
        mpfr_init2(v_, working_bits());
        if constexpr (std::is_signed_v<I>) mpfr_set_si(v_, static_cast<long>(i), MPFR_RNDN);
        else mpfr_set_ui(v_, static_cast<unsigned long>(i), MPFR_RNDN);
    }
    Real(double d) { mpfr_init2(v_, working_bits()); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit Real(const std::string& s) {
        mpfr_init2(v_, working_bits());
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("not a number: " + s);
    }
    explicit Real(const char* s) : Real(std::string(s)) {}
    explicit Real(const mpq_class& q) { mpfr_init2(v_, working_bits()); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    explicit Real(const mpz_class& z) { mpfr_init2(v_, working_bits()); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    ~Real() { mpfr_clear(v_); }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    // Copy rounded to the current working precision.
    Real rounded() const { Real r; mpfr_set(r.v_, v_, MPFR_RNDN); return r; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool signbit() const { return mpfr_signbit(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Scientific notation with `digits` significant digits, e.g. -1.2345e-07.
    std::string str(int digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return mpfr_signbit(v_) ? "-inf" : "inf";
        std::string fmt = "%." + std::to_string(digits > 1 ? digits - 1 : 0) + "Re";
        char* buf = nullptr;
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }
    std::string str() const { return str(working_digits()); }

    Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { Real r; mpfr_add(r.v_, v_, o.v_, MPFR_RNDN); return *this = std::move(r); }
    Real& operator-=(const Real& o) { Real r; mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN); return *this = std::move(r); }
    Real& operator*=(const Real& o) { Real r; mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN); return *this = std::move(r); }
    Real& operator/=(const Real& o) { Real r; mpfr_div(r.v_, v_, o.v_, MPFR_RNDN); return *this = std::move(r); }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, long b) { Real r; mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator*(long b, const Real& a) { return a * b; }
    friend Real operator/(const Real& a, long b) { Real r; mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator+(const Real& a, long b) { Real r; mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator+(long b, const Real& a) { return a + b; }
    friend Real operator-(const Real& a, long b) { Real r; mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator-(long b, const Real& a) { Real r; mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN); return r; }
    friend Real operator/(long b, const Real& a) { Real r; mpfr_si_div(r.v_, b, a.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
    friend Real operator*(int b, const Real& a) { return a * static_cast<long>(b); }
    friend Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
    friend Real operator/(int b, const Real& a) { return static_cast<long>(b) / a; }
    friend Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
    friend Real operator+(int b, const Real& a) { return a + static_cast<long>(b); }
    friend Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
    friend Real operator-(int b, const Real& a) { return static_cast<long>(b) - a; }

    friend Real operator+(const Real& a, double b) { return a + Real(b); }
    friend Real operator+(double b, const Real& a) { return Real(b) + a; }
    friend Real operator-(const Real& a, double b) { return a - Real(b); }
    friend Real operator-(double b, const Real& a) { return Real(b) - a; }
    friend Real operator*(const Real& a, double b) { return a * Real(b); }
    friend Real operator*(double b, const Real& a) { return Real(b) * a; }
    friend Real operator/(const Real& a, double b) { return a / Real(b); }
    friend Real operator/(double b, const Real& a) { return Real(b) / a; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

private:
    mpfr_t v_;
};

#define FERRERS_UNARY(name, fn)                                 \
    inline Real name(const Real& x) {                           \
        Real r;                                                 \
        fn(r.get(), x.get(), MPFR_RNDN);                        \
        return r;                                               \
    }
FERRERS_UNARY(sqrt, mpfr_sqrt)
FERRERS_UNARY(exp, mpfr_exp)
FERRERS_UNARY(expm1, mpfr_expm1)
FERRERS_UNARY(log, mpfr_log)
FERRERS_UNARY(log1p, mpfr_log1p)
FERRERS_UNARY(log10, mpfr_log10)
FERRERS_UNARY(sin, mpfr_sin)
FERRERS_UNARY(cos, mpfr_cos)
FERRERS_UNARY(tan, mpfr_tan)
FERRERS_UNARY(asin, mpfr_asin)
FERRERS_UNARY(acos, mpfr_acos)
FERRERS_UNARY(atan, mpfr_atan)
FERRERS_UNARY(sinh, mpfr_sinh)
FERRERS_UNARY(cosh, mpfr_cosh)
FERRERS_UNARY(tanh, mpfr_tanh)
FERRERS_UNARY(asinh, mpfr_asinh)
FERRERS_UNARY(acosh, mpfr_acosh)
FERRERS_UNARY(atanh, mpfr_atanh)
FERRERS_UNARY(cbrt, mpfr_cbrt)
FERRERS_UNARY(abs, mpfr_abs)
FERRERS_UNARY(lgamma_mpfr, mpfr_lngamma)
#undef FERRERS_UNARY

inline Real floor(const Real& x) { Real r; mpfr_floor(r.get(), x.get()); return r; }
inline Real round(const Real& x) { Real r; mpfr_round(r.get(), x.get()); return r; }
inline Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN); return r; }
inline Real hypot(const Real& x, const Real& y) { Real r; mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN); return r; }
inline Real pow(const Real& x, const Real& y) { Real r; mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN); return r; }
inline Real pow(const Real& x, long n) { Real r; mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN); return r; }
inline Real pow(const Real& x, int n) { return pow(x, static_cast<long>(n)); }
inline Real copysign(const Real& x, const Real& y) { Real r; mpfr_copysign(r.get(), x.get(), y.get(), MPFR_RNDN); return r; }
inline Real ldexp(const Real& x, long e) { Real r; mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN); return r; }
inline bool signbit(const Real& x) { return x.signbit(); }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

inline Real const_pi() { Real r; mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
inline Real const_euler() { Real r; mpfr_const_euler(r.get(), MPFR_RNDN); return r; }
inline Real infinity(int sign = 1) { Real r; mpfr_set_inf(r.get(), sign); return r; }

// 10^k at working precision.
inline Real pow10(long k) { return pow(Real(10), k); }

}  // namespace ferrers
