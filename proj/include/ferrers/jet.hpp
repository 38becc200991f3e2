#pragma once
// First-order forward-mode jets: a value together with its derivative with
// respect to one independent variable.

#include "complex.hpp"

namespace ferrers {

template <class S>
struct Jet {
    S v, d;

    Jet() : v(0), d(0) {}
    Jet(const S& value) : v(value), d(0) {}
    Jet(const S& value, const S& deriv) : v(value), d(deriv) {}
    template <class I, std::enable_if_t<std::is_arithmetic_v<I>, int> = 0>
    Jet(I c) : v(c), d(0) {}

    static Jet variable(const S& x) { return Jet(x, S(1)); }

    Jet operator-() const { return {-v, -d}; }
    Jet& operator+=(const Jet& o) { v += o.v; d += o.d; return *this; }
    Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; return *this; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d}; }
    friend Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d}; }
    friend Jet operator*(const Jet& a, const Jet& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
    friend Jet operator/(const Jet& a, const Jet& b) {
        S q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }
    friend Jet operator*(const Jet& a, const S& c) { return {a.v * c, a.d * c}; }
    friend Jet operator*(const S& c, const Jet& a) { return {a.v * c, a.d * c}; }
    friend Jet operator/(const Jet& a, const S& c) { return {a.v / c, a.d / c}; }
    friend Jet operator+(const Jet& a, const S& c) { return {a.v + c, a.d}; }
    friend Jet operator-(const Jet& a, const S& c) { return {a.v - c, a.d}; }
    friend Jet operator-(const S& c, const Jet& a) { return {c - a.v, -a.d}; }
    friend Jet operator*(const Jet& a, long c) { return {a.v * c, a.d * c}; }
    friend Jet operator*(long c, const Jet& a) { return {a.v * c, a.d * c}; }
    friend Jet operator/(const Jet& a, long c) { return {a.v / c, a.d / c}; }
    friend Jet operator+(const Jet& a, long c) { return {a.v + c, a.d}; }
    friend Jet operator-(const Jet& a, long c) { return {a.v - c, a.d}; }
    friend Jet operator-(long c, const Jet& a) { return {c - a.v, -a.d}; }
    friend Jet operator*(const Jet& a, int c) { return a * static_cast<long>(c); }
    friend Jet operator*(int c, const Jet& a) { return a * static_cast<long>(c); }
    friend Jet operator/(const Jet& a, int c) { return a / static_cast<long>(c); }
    friend Jet operator+(const Jet& a, int c) { return a + static_cast<long>(c); }
    friend Jet operator-(const Jet& a, int c) { return a - static_cast<long>(c); }
    friend Jet operator-(int c, const Jet& a) { return static_cast<long>(c) - a; }
    // Real scalars acting on complex jets.
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator*(const Jet& a, const R& c) { return {a.v * c, a.d * c}; }
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator*(const R& c, const Jet& a) { return {a.v * c, a.d * c}; }
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator/(const Jet& a, const R& c) { return {a.v / c, a.d / c}; }
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator+(const Jet& a, const R& c) { return {a.v + c, a.d}; }
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator-(const Jet& a, const R& c) { return {a.v - c, a.d}; }
    template <class R, std::enable_if_t<std::is_same_v<R, Real> && !std::is_same_v<S, Real>, int> = 0>
    friend Jet operator-(const R& c, const Jet& a) { return {c - a.v, -a.d}; }
};

template <class S> Jet<S> sqrt(const Jet<S>& x) { S r = sqrt(x.v); return {r, x.d / (r * 2)}; }
template <class S> Jet<S> exp(const Jet<S>& x) { S e = exp(x.v); return {e, e * x.d}; }
template <class S> Jet<S> log(const Jet<S>& x) { return {log(x.v), x.d / x.v}; }
template <class S> Jet<S> cosh(const Jet<S>& x) { return {cosh(x.v), sinh(x.v) * x.d}; }
template <class S> Jet<S> sinh(const Jet<S>& x) { return {sinh(x.v), cosh(x.v) * x.d}; }

template <class S, class P>
Jet<S> pow(const Jet<S>& x, const P& p) {
    S r = pow(x.v, p);
    return {r, r * p / x.v * x.d};
}

}  // namespace ferrers
