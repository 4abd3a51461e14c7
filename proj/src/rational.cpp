#include "fgbar/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace fgbar {

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    const Rational d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("division by zero");
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
    // mpq_set_d is exact for finite doubles.
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

GaussRational gauss_from_complex(std::complex<double> z) {
    return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

GaussRational pow(const GaussRational& base, unsigned exponent) {
    GaussRational result(1);
    GaussRational b = base;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

std::string to_string(const GaussRational& c) {
    if (c.is_real()) return c.re.get_str();
    std::string s = "(";
    if (sgn(c.re) != 0) s += c.re.get_str();
    if (sgn(c.im) > 0 && sgn(c.re) != 0) s += "+";
    if (c.im == 1) {
        s += "i";
    } else if (c.im == -1) {
        s += "-i";
    } else {
        s += c.im.get_str() + "*i";
    }
    s += ")";
    return s;
}

}  // namespace fgbar
