#include "ptk/scalar.hpp"

#include <stdexcept>

namespace ptk {

Gq Gq::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  Rational r = re / n;
  Rational i = -im / n;
  return Gq(r, i);
}

Gq& Gq::operator*=(const Gq& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Gq& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  std::string imag;
  if (z.im == 1)
    imag = "i";
  else if (z.im == -1)
    imag = "-i";
  else
    imag = to_string(z.im) + "i";
  if (sgn(z.re) == 0) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return to_string(z.re) + imag;
}

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::string t(s);
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational: " + t);
  if (t[0] == '+') t.erase(0, 1);
  Rational q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  q.canonicalize();
  return q;
}

Gq parse_gq(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty scalar");
  if (t.back() != 'i') return Gq(parse_rational(t));
  t.pop_back();
  // split at the last sign that is not the leading character
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if (t[k] == '+' || t[k] == '-') {
      cut = k;
      break;
    }
  std::string re_part = cut == std::string::npos ? "" : t.substr(0, cut);
  std::string im_part = cut == std::string::npos ? t : t.substr(cut);
  Rational im;
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else
    im = parse_rational(im_part);
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return Gq(re, im);
}

Gq ipow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Gq(1);
    case 1: return Gq::I();
    case 2: return Gq(-1);
    default: return -Gq::I();
  }
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace ptk
