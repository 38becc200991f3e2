#pragma once
// Complex numbers over an arbitrary real type (std::complex is only specified
// for float/double/long double). Principal branches throughout: ln, sqrt and
// fractional powers are cut along the negative real axis, and a signed zero
// imaginary part selects the side of the cut.

#include "real.hpp"

namespace ferrers {

template <class T>
struct Complex {
    T re, im;

    Complex() : re(0), im(0) {}
    Complex(const T& r) : re(r), im(0) {}
    Complex(const T& r, const T& i) : re(r), im(i) {}
    template <class I, std::enable_if_t<std::is_arithmetic_v<I>, int> = 0>
    Complex(I r) : re(r), im(0) {}

    const T& real() const { return re; }
    const T& imag() const { return im; }

    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        // Smith's algorithm keeps the intermediate magnitudes bounded.
        if (abs(b.re) >= abs(b.im)) {
            T r = b.im / b.re, d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        T r = b.re / b.im, d = b.re * r + b.im;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }

    // Mixed operations with a real scalar leave the imaginary part untouched
    // (apart from negation), so the sign of a zero imaginary part survives.
    friend Complex operator+(const Complex& a, const T& s) { return {a.re + s, a.im}; }
    friend Complex operator+(const T& s, const Complex& a) { return {s + a.re, a.im}; }
    friend Complex operator-(const Complex& a, const T& s) { return {a.re - s, a.im}; }
    friend Complex operator-(const T& s, const Complex& a) { return {s - a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const T& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const T& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const T& s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(const T& s, const Complex& a) { return Complex(s) / a; }

    friend Complex operator+(const Complex& a, long s) { return {a.re + s, a.im}; }
    friend Complex operator+(long s, const Complex& a) { return {a.re + s, a.im}; }
    friend Complex operator-(const Complex& a, long s) { return {a.re - s, a.im}; }
    friend Complex operator-(long s, const Complex& a) { return {s - a.re, -a.im}; }
    friend Complex operator*(const Complex& a, long s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(long s, const Complex& a) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, long s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(long s, const Complex& a) { return Complex(T(s)) / a; }
    friend Complex operator+(const Complex& a, int s) { return a + static_cast<long>(s); }
    friend Complex operator+(int s, const Complex& a) { return a + static_cast<long>(s); }
    friend Complex operator-(const Complex& a, int s) { return a - static_cast<long>(s); }
    friend Complex operator-(int s, const Complex& a) { return static_cast<long>(s) - a; }
    friend Complex operator*(const Complex& a, int s) { return a * static_cast<long>(s); }
    friend Complex operator*(int s, const Complex& a) { return a * static_cast<long>(s); }
    friend Complex operator/(const Complex& a, int s) { return a / static_cast<long>(s); }
    friend Complex operator/(int s, const Complex& a) { return static_cast<long>(s) / a; }

    friend Complex operator*(const Complex& a, double s) { return a * T(s); }
    friend Complex operator*(double s, const Complex& a) { return a * T(s); }
    friend Complex operator/(const Complex& a, double s) { return a / T(s); }
    friend Complex operator+(const Complex& a, double s) { return a + T(s); }
    friend Complex operator-(const Complex& a, double s) { return a - T(s); }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using CReal = Complex<Real>;

template <class T> Complex<T> conj(const Complex<T>& z) { return {z.re, -z.im}; }
template <class T> T abs(const Complex<T>& z) { return hypot(z.re, z.im); }
template <class T> T norm(const Complex<T>& z) { return z.re * z.re + z.im * z.im; }
template <class T> T arg(const Complex<T>& z) { return atan2(z.im, z.re); }
template <class T> Complex<T> polar(const T& r, const T& t) { return {r * cos(t), r * sin(t)}; }

template <class T>
Complex<T> exp(const Complex<T>& z) {
    T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class T>
Complex<T> log(const Complex<T>& z) {
    return {log(abs(z)), arg(z)};
}

template <class T>
Complex<T> sqrt(const Complex<T>& z) {
    if (z.re.is_zero() && z.im.is_zero()) return {T(0), z.im};
    T t = sqrt((abs(z) + abs(z.re)) / 2);
    if (!signbit(z.re)) return {t, z.im / (t * 2)};
    return {abs(z.im) / (t * 2), copysign(t, z.im)};
}

template <class T>
Complex<T> pow(const Complex<T>& z, const T& p) {
    if (z.re.is_zero() && z.im.is_zero()) return Complex<T>(T(0));
    return exp(log(z) * p);
}

template <class T>
Complex<T> pow(const Complex<T>& z, const Complex<T>& p) {
    if (z.re.is_zero() && z.im.is_zero()) return Complex<T>(T(0));
    return exp(log(z) * p);
}

template <class T>
Complex<T> pow(const Complex<T>& z, long n) {
    if (n < 0) return Complex<T>(T(1)) / pow(z, -n);
    Complex<T> r(T(1)), b = z;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}
template <class T> Complex<T> pow(const Complex<T>& z, int n) { return pow(z, static_cast<long>(n)); }

template <class T> Complex<T> sin(const Complex<T>& z) { return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)}; }
template <class T> Complex<T> cos(const Complex<T>& z) { return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))}; }
template <class T> Complex<T> cosh(const Complex<T>& z) { return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)}; }
template <class T> Complex<T> sinh(const Complex<T>& z) { return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)}; }

// atanh(w) = (ln(1+w) - ln(1-w))/2, cuts (-inf,-1] and [1,inf).
template <class T>
Complex<T> atanh(const Complex<T>& w) {
    return (log(T(1) + w) - log(T(1) - w)) / 2;
}

// acosh(w) = ln(w + sqrt(w-1) sqrt(w+1)), cut (-inf,1].
template <class T>
Complex<T> acosh(const Complex<T>& w) {
    return log(w + sqrt(w - T(1)) * sqrt(w + T(1)));
}

// asin(w) = -i ln(i w + sqrt(1-w^2)), cuts (-inf,-1] and [1,inf).
template <class T>
Complex<T> asin(const Complex<T>& w) {
    Complex<T> iw{-w.im, w.re};
    Complex<T> l = log(iw + sqrt(T(1) - w) * sqrt(T(1) + w));
    return {l.im, -l.re};
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Complex<T>& z) {
    return os << "(" << z.re << ", " << z.im << ")";
}

}  // namespace ferrers
