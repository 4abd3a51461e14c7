#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace fgbar {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact complex number a + b*i with a, b rational.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() : re(0), im(0) {}
    GaussRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRational conj() const { return {re, -im}; }
    // |z|^2, exact.
    Rational norm() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational& operator+=(const GaussRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
};

inline Rational make_rational(long long num, long long den = 1) {
    Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
    q.canonicalize();
    return q;
}

// Exact conversion of a binary64 value (every finite double is a dyadic rational).
Rational rational_from_double(double x);
GaussRational gauss_from_complex(std::complex<double> z);

GaussRational pow(const GaussRational& base, unsigned exponent);

// Canonical text: "3", "-1/2", "(1+i)", "(1/2-3/4*i)", "i", "(-2*i)".
std::string to_string(const GaussRational& c);

}  // namespace fgbar
