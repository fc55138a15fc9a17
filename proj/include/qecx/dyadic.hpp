#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace qecx {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/* Exact complex dyadic scalar  (re_num + i*im_num) / 2^den_exp.  Canonical
   form keeps den_exp minimal (reduced while both numerators are even), so
   equality is plain field equality.  All ring ops are exact; no rounding
   anywhere. */
struct DyadicComplex {
    Int re = 0, im = 0;
    unsigned den_exp = 0;

    DyadicComplex() = default;
    DyadicComplex(Int r, Int i, unsigned d) : re(std::move(r)), im(std::move(i)), den_exp(d) {
        canonicalize();
    }
    DyadicComplex(long v) : re(v) {}  // NOLINT: implicit from integers is convenient
    DyadicComplex(int v) : re(v) {}

    static DyadicComplex half_pow(unsigned d) { return DyadicComplex(1, 0, d); }  // 1/2^d
    static DyadicComplex i_unit() { return DyadicComplex(0, 1, 0); }

    void canonicalize() {
        if (re == 0 && im == 0) { den_exp = 0; return; }
        while (den_exp > 0 && (re & 1) == 0 && (im & 1) == 0) {
            re >>= 1;
            im >>= 1;
            --den_exp;
        }
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    DyadicComplex operator-() const {
        DyadicComplex r;
        r.re = -re; r.im = -im; r.den_exp = den_exp;
        return r;
    }
    DyadicComplex conj() const {
        DyadicComplex r;
        r.re = re; r.im = -im; r.den_exp = den_exp;
        return r;
    }
    /* Multiply by i^k. */
    DyadicComplex times_phase(unsigned k) const {
        DyadicComplex r = *this;
        for (unsigned j = 0; j < (k & 3u); ++j) {
            Int t = r.re;
            r.re = -r.im;
            r.im = t;
        }
        return r;
    }
    DyadicComplex& operator+=(const DyadicComplex& o) {
        unsigned d = den_exp > o.den_exp ? den_exp : o.den_exp;
        re = (re << (d - den_exp)) + (o.re << (d - o.den_exp));
        im = (im << (d - den_exp)) + (o.im << (d - o.den_exp));
        den_exp = d;
        canonicalize();
        return *this;
    }
    DyadicComplex& operator-=(const DyadicComplex& o) { return *this += -o; }
    friend DyadicComplex operator+(DyadicComplex a, const DyadicComplex& b) { return a += b; }
    friend DyadicComplex operator-(DyadicComplex a, const DyadicComplex& b) { return a -= b; }
    friend DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b) {
        DyadicComplex r;
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        r.den_exp = a.den_exp + b.den_exp;
        r.canonicalize();
        return r;
    }
    DyadicComplex& operator*=(const DyadicComplex& o) { return *this = *this * o; }

    /* |v|^2, exact (real result). */
    DyadicComplex abs_sq() const {
        DyadicComplex r;
        r.re = re * re + im * im;
        r.den_exp = 2 * den_exp;
        r.canonicalize();
        return r;
    }

    friend bool operator==(const DyadicComplex& a, const DyadicComplex& b) {
        return a.den_exp == b.den_exp && a.re == b.re && a.im == b.im;
    }

    Rational real_rational() const {
        if (im != 0) throw std::logic_error("DyadicComplex: not real");
        Int den = 1;
        den <<= den_exp;
        return Rational(re) / Rational(den);
    }

    std::string str() const {
        std::string s = "(" + re.str();
        if (im != 0) s += (im > 0 ? "+" : "") + im.str() + "i";
        s += ")";
        if (den_exp) s += "/2^" + std::to_string(den_exp);
        return s;
    }
};

}  // namespace qecx
