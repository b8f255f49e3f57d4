#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ptk {

using Rational = mpq_class;
using cd = std::complex<double>;

// Exact element of Q(i).
struct Gq {
  Rational re;
  Rational im;

  Gq() = default;
  Gq(long n) : re(n), im(0) {}
  Gq(int n) : re(n), im(0) {}
  Gq(Rational r) : re(std::move(r)), im(0) { re.canonicalize(); }
  Gq(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Gq I() { return Gq(Rational(0), Rational(1)); }
  static Gq frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return Gq(r);
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  Gq conj() const {
    Gq r = *this;
    r.im = -r.im;
    return r;
  }
  Rational norm2() const { return re * re + im * im; }
  Gq inverse() const;
  cd to_complex() const { return cd(re.get_d(), im.get_d()); }

  Gq operator-() const {
    Gq r;
    r.re = -re;
    r.im = -im;
    return r;
  }
  Gq& operator+=(const Gq& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gq& operator-=(const Gq& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gq& operator*=(const Gq& o);
  Gq& operator/=(const Gq& o) { return *this *= o.inverse(); }

  friend Gq operator+(Gq a, const Gq& b) { return a += b; }
  friend Gq operator-(Gq a, const Gq& b) { return a -= b; }
  friend Gq operator*(Gq a, const Gq& b) { return a *= b; }
  friend Gq operator/(Gq a, const Gq& b) { return a /= b; }
  friend bool operator==(const Gq& a, const Gq& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gq& a, const Gq& b) { return !(a == b); }
  // Total order used only for canonical containers.
  friend bool operator<(const Gq& a, const Gq& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
  }
};

// "num/den" style; imaginary part printed as "<q>i", e.g. "3/5+4/5i", "-i".
std::string to_string(const Rational& q);
std::string to_string(const Gq& z);
// Accepts the format written by to_string; throws std::invalid_argument.
Gq parse_gq(std::string_view s);
Rational parse_rational(std::string_view s);

// i^k for integer k.
Gq ipow(long k);
Rational factorial(unsigned n);

inline bool is_zero(const Gq& z) { return z.is_zero(); }
inline bool is_zero(const cd& z) { return z == cd(0.0, 0.0); }
inline Gq conj(const Gq& z) { return z.conj(); }

}  // namespace ptk
