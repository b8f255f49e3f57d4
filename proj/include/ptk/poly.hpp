#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptk/scalar.hpp"

namespace ptk {

using Mono = std::uint64_t;  // 8 bits of exponent per variable, at most 8 variables

inline int mono_exp(Mono m, int v) { return static_cast<int>((m >> (8 * v)) & 0xff); }
inline Mono mono_unit(int v) { return Mono(1) << (8 * v); }

// Coefficient model for functions on a coordinate chart.
//   polynomial(d): variables x_1..x_d, d/dx_i x_j = delta_ij.
//   torus(d):      variables c_i = cos t_i, s_i = sin t_i on [0, 2pi)^d.
//   sphere():      variables cos th, sin th, cos ph, sin ph on (0, pi) x [0, 2pi).
// For angle variables the relation s^2 = 1 - c^2 is applied eagerly, so every
// trigonometric polynomial has a unique normal form.
struct Chart {
  enum class Kind { polynomial, torus, sphere };
  Kind kind;
  int dim = 0;
  int nvars = 0;
  std::vector<std::string> coord_names;
  std::vector<std::string> var_names;
  std::vector<std::pair<int, int>> circles;  // (cos variable, sin variable)
  // dvar[i][v] = d/d(coord i) of variable v, a linear combination of monomials.
  std::vector<std::vector<std::vector<std::pair<Mono, Gq>>>> dvar;

  static std::shared_ptr<const Chart> polynomial(int d);
  static std::shared_ptr<const Chart> torus(int d);
  static std::shared_ptr<const Chart> sphere();

  // Values of the variables at a point given in chart coordinates.
  std::vector<double> variable_values(const std::vector<double>& coords) const;
  std::string name() const;
};

using ChartPtr = std::shared_ptr<const Chart>;

class Poly {
 public:
  using Term = std::pair<Mono, Gq>;

  Poly() = default;
  Poly(const Gq& c);  // constant (chart-free)
  Poly(long c) : Poly(Gq(c)) {}
  Poly(ChartPtr chart, std::vector<Term> terms);  // terms need not be sorted or reduced

  static Poly var(const ChartPtr& chart, int v);
  static Poly constant(const ChartPtr& chart, const Gq& c);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }
  Gq constant_term() const { return (!t_.empty() && t_[0].first == 0) ? t_[0].second : Gq(0); }
  int total_degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Gq& s) const;

  // Partial derivative along chart coordinate i.
  Poly derivative(int i) const;
  Poly conj() const;
  cd eval(const std::vector<double>& var_values) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b);

  std::string str() const;

 private:
  static ChartPtr join(const ChartPtr& a, const ChartPtr& b);
  void normalize();  // sort, merge, reduce circle relations, drop zeros

  ChartPtr chart_;
  std::vector<Term> t_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }
inline Poly conj(const Poly& p) { return p.conj(); }
template <class R>
R from_gq(const Gq& z);
template <>
inline Poly from_gq<Poly>(const Gq& z) {
  return Poly(z);
}

// Exact value of an integral over a compact chart domain: sum_k c_k pi^k.
struct PiSeries {
  std::map<int, Gq> c;
  PiSeries& operator+=(const PiSeries& o);
  PiSeries scaled(const Gq& s) const;
  cd value() const;
  bool is_zero() const { return c.empty(); }
  std::string str() const;
  friend bool operator==(const PiSeries& a, const PiSeries& b) { return a.c == b.c; }
};

// Integral of f dt_1...dt_d over the chart's coordinate domain (torus and
// sphere charts only).
PiSeries integrate_exact(const Poly& f, const ChartPtr& chart);

}  // namespace ptk
