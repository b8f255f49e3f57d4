#include "ptk/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptk {

std::shared_ptr<const Chart> Chart::polynomial(int d) {
  if (d < 0 || d > 8) throw std::invalid_argument("polynomial chart dimension must be in [0, 8]");
  auto c = std::make_shared<Chart>();
  c->kind = Kind::polynomial;
  c->dim = d;
  c->nvars = d;
  c->dvar.assign(d, std::vector<std::vector<std::pair<Mono, Gq>>>(d));
  for (int i = 0; i < d; ++i) {
    c->coord_names.push_back("x" + std::to_string(i + 1));
    c->var_names.push_back("x" + std::to_string(i + 1));
    c->dvar[i][i] = {{0, Gq(1)}};
  }
  return c;
}

std::shared_ptr<const Chart> Chart::torus(int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("torus chart dimension must be in [1, 4]");
  auto c = std::make_shared<Chart>();
  c->kind = Kind::torus;
  c->dim = d;
  c->nvars = 2 * d;
  c->dvar.assign(d, std::vector<std::vector<std::pair<Mono, Gq>>>(2 * d));
  for (int i = 0; i < d; ++i) {
    std::string k = std::to_string(i + 1);
    c->coord_names.push_back("t" + k);
    c->var_names.push_back("c" + k);
    c->var_names.push_back("s" + k);
    c->circles.emplace_back(2 * i, 2 * i + 1);
    c->dvar[i][2 * i] = {{mono_unit(2 * i + 1), Gq(-1)}};
    c->dvar[i][2 * i + 1] = {{mono_unit(2 * i), Gq(1)}};
  }
  return c;
}

std::shared_ptr<const Chart> Chart::sphere() {
  auto c = std::make_shared<Chart>();
  c->kind = Kind::sphere;
  c->dim = 2;
  c->nvars = 4;
  c->coord_names = {"th", "ph"};
  c->var_names = {"cth", "sth", "cph", "sph"};
  c->circles = {{0, 1}, {2, 3}};
  c->dvar.assign(2, std::vector<std::vector<std::pair<Mono, Gq>>>(4));
  c->dvar[0][0] = {{mono_unit(1), Gq(-1)}};
  c->dvar[0][1] = {{mono_unit(0), Gq(1)}};
  c->dvar[1][2] = {{mono_unit(3), Gq(-1)}};
  c->dvar[1][3] = {{mono_unit(2), Gq(1)}};
  return c;
}

std::vector<double> Chart::variable_values(const std::vector<double>& coords) const {
  if (static_cast<int>(coords.size()) != dim) throw std::invalid_argument("coordinate count mismatch");
  if (kind == Kind::polynomial) return coords;
  std::vector<double> v;
  for (double t : coords) {
    v.push_back(std::cos(t));
    v.push_back(std::sin(t));
  }
  return v;
}

std::string Chart::name() const {
  switch (kind) {
    case Kind::polynomial: return "R" + std::to_string(dim);
    case Kind::torus: return "T" + std::to_string(dim);
    default: return "S2";
  }
}

Poly::Poly(const Gq& c) {
  if (!c.is_zero()) t_.emplace_back(0, c);
}

Poly::Poly(ChartPtr chart, std::vector<Term> terms) : chart_(std::move(chart)), t_(std::move(terms)) {
  normalize();
}

Poly Poly::var(const ChartPtr& chart, int v) {
  if (v < 0 || v >= chart->nvars) throw std::out_of_range("variable index");
  return Poly(chart, {{mono_unit(v), Gq(1)}});
}

Poly Poly::constant(const ChartPtr& chart, const Gq& c) {
  Poly p(c);
  p.chart_ = chart;
  return p;
}

int Poly::total_degree() const {
  int deg = 0;
  for (const auto& [m, c] : t_) {
    int s = 0;
    for (int v = 0; v < 8; ++v) s += mono_exp(m, v);
    deg = std::max(deg, s);
  }
  return deg;
}

ChartPtr Poly::join(const ChartPtr& a, const ChartPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a != b && (a->kind != b->kind || a->dim != b->dim))
    throw std::invalid_argument("polynomials live on different charts");
  return a;
}

void Poly::normalize() {
  if (chart_ && !chart_->circles.empty()) {
    std::vector<Term> work;
    work.swap(t_);
    while (!work.empty()) {
      Term t = std::move(work.back());
      work.pop_back();
      bool reduced = false;
      for (const auto& [cv, sv] : chart_->circles) {
        if (mono_exp(t.first, sv) >= 2) {
          Mono base = t.first - 2 * mono_unit(sv);
          work.emplace_back(base + 2 * mono_unit(cv), -t.second);
          work.emplace_back(base, std::move(t.second));
          reduced = true;
          break;
        }
      }
      if (!reduced) t_.push_back(std::move(t));
    }
  }
  std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second.is_zero(); }), out.end());
  t_.swap(out);
}

Poly& Poly::operator+=(const Poly& o) {
  chart_ = join(chart_, o.chart_);
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      out.push_back(o.t_[j++]);
    } else {
      Gq s = t_[i].second + o.t_[j].second;
      if (!s.is_zero()) out.emplace_back(t_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  t_.swap(out);
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.t_) t.second = -t.second;
  return p;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_.empty() || b.t_.empty()) return Poly();
  ChartPtr chart = Poly::join(a.chart_, b.chart_);
  if (a.is_constant()) return b.scaled(a.t_[0].second);
  if (b.is_constant()) return a.scaled(b.t_[0].second);
  std::vector<Poly::Term> prod;
  prod.reserve(a.t_.size() * b.t_.size());
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) prod.emplace_back(ma + mb, ca * cb);
  return Poly(chart, std::move(prod));
}

Poly Poly::scaled(const Gq& s) const {
  if (s.is_zero()) return Poly();
  Poly p = *this;
  for (auto& t : p.t_) t.second *= s;
  return p;
}

Poly Poly::derivative(int i) const {
  if (t_.empty()) return Poly();
  if (!chart_) return Poly();  // constants
  if (i < 0 || i >= chart_->dim) throw std::out_of_range("coordinate index");
  std::vector<Term> out;
  for (const auto& [m, c] : t_)
    for (int v = 0; v < chart_->nvars; ++v) {
      int e = mono_exp(m, v);
      if (e == 0) continue;
      Mono rest = m - mono_unit(v);
      for (const auto& [dm, dc] : chart_->dvar[i][v]) out.emplace_back(rest + dm, c * dc * Gq(e));
    }
  return Poly(chart_, std::move(out));
}

Poly Poly::conj() const {
  Poly p = *this;
  for (auto& t : p.t_) t.second = t.second.conj();
  return p;
}

cd Poly::eval(const std::vector<double>& x) const {
  cd acc(0.0, 0.0);
  for (const auto& [m, c] : t_) {
    double v = 1.0;
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
      int e = mono_exp(m, k);
      for (int r = 0; r < e; ++r) v *= x[k];
    }
    acc += c.to_complex() * v;
  }
  return acc;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size();
  for (std::size_t k = 0; k < a.t_.size(); ++k) {
    if (a.t_[k].first != b.t_[k].first) return a.t_[k].first < b.t_[k].first;
    if (a.t_[k].second != b.t_[k].second) return a.t_[k].second < b.t_[k].second;
  }
  return false;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    std::string cs = to_string(c);
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    if (m == 0) {
      os << cs;
      continue;
    }
    if (!c.is_one()) os << (compound ? "(" + cs + ")" : cs) << "*";
    bool firstv = true;
    for (int v = 0; v < 8; ++v) {
      int e = mono_exp(m, v);
      if (!e) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << (chart_ ? chart_->var_names[v] : "v" + std::to_string(v));
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

PiSeries& PiSeries::operator+=(const PiSeries& o) {
  for (const auto& [k, v] : o.c) {
    c[k] += v;
    if (c[k].is_zero()) c.erase(k);
  }
  return *this;
}

PiSeries PiSeries::scaled(const Gq& s) const {
  PiSeries r;
  if (s.is_zero()) return r;
  for (const auto& [k, v] : c) r.c[k] = v * s;
  return r;
}

cd PiSeries::value() const {
  cd acc(0.0, 0.0);
  for (const auto& [k, v] : c) acc += v.to_complex() * std::pow(M_PI, k);
  return acc;
}

std::string PiSeries::str() const {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [k, v] : c) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v) + ")";
    if (k == 1) s += "*pi";
    if (k > 1) s += "*pi^" + std::to_string(k);
  }
  return s;
}

namespace {

// int_0^{2pi} cos^a sin^b dt with b in {0,1}: (coefficient, power of pi)
bool full_circle(int a, int b, Rational& coef) {
  if (b == 1 || a % 2 == 1) return false;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), a, a / 2);
  coef = Rational(2 * binom) / Rational(mpz_class(1) << a);
  coef.canonicalize();
  return true;
}

}  // namespace

PiSeries integrate_exact(const Poly& f, const ChartPtr& chart) {
  if (!chart || chart->kind == Chart::Kind::polynomial)
    throw std::invalid_argument("exact integration needs a compact chart");
  PiSeries out;
  for (const auto& [m, c] : f.terms()) {
    Rational coef(1);
    int pi_power = 0;
    bool nonzero = true;
    if (chart->kind == Chart::Kind::torus) {
      for (int i = 0; i < chart->dim && nonzero; ++i) {
        Rational q;
        nonzero = full_circle(mono_exp(m, 2 * i), mono_exp(m, 2 * i + 1), q);
        coef *= q;
        ++pi_power;
      }
    } else {
      int a = mono_exp(m, 0), b = mono_exp(m, 1);
      if (a % 2 == 1) {
        nonzero = false;
      } else if (b == 0) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), a, a / 2);
        coef *= Rational(binom) / Rational(mpz_class(1) << a);
        ++pi_power;
      } else {
        coef *= Rational(2, a + 1);
      }
      Rational q;
      if (nonzero) nonzero = full_circle(mono_exp(m, 2), mono_exp(m, 3), q);
      coef *= q;
      ++pi_power;
    }
    if (!nonzero) continue;
    coef.canonicalize();
    PiSeries t;
    t.c[pi_power] = c * Gq(coef);
    out += t;
  }
  return out;
}

}  // namespace ptk
