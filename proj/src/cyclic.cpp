#include "ptk/cyclic.hpp"

#include <sstream>
#include <stdexcept>

namespace ptk {

namespace {

ChartPtr chart_of(const TensorSum& t) {
  for (const auto& x : t)
    for (const auto& a : x.slots)
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          if (a(i, j).chart()) return a(i, j).chart();
  return nullptr;
}

std::vector<std::pair<BasisElt, Gq>> expand(const Elem& a) {
  std::vector<std::pair<BasisElt, Gq>> out;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (const auto& [mono, c] : a(i, j).terms()) out.push_back({BasisElt{i, j, mono}, c});
  return out;
}

Chain build(const TensorSum& t, ChainMode mode, int m, int k, ChartPtr chart) {
  Chain out(mode, m, k, chart);
  for (const auto& x : t) {
    if (x.coef.is_zero()) continue;
    if (static_cast<int>(x.slots.size()) != k + 1) throw std::invalid_argument("mixed chain degrees");
    std::vector<std::vector<std::pair<BasisElt, Gq>>> ex;
    bool zero = false;
    for (const auto& a : x.slots) {
      if (a.rows() != m || a.cols() != m) throw std::invalid_argument("chain entry size mismatch");
      ex.push_back(expand(a));
      if (ex.back().empty()) zero = true;
    }
    if (zero) continue;
    BasisTensor cur(k + 1);
    std::function<void(int, Gq)> rec = [&](int s, Gq c) {
      if (s == k + 1) {
        out.add(cur, c);
        return;
      }
      for (const auto& [e, v] : ex[s]) {
        cur[s] = e;
        rec(s + 1, c * v);
      }
    };
    rec(0, x.coef);
  }
  return out;
}

Elem block_of(const Elem& x, int bi, int bj, int m) { return x.block(bi * m, bj * m, m, m); }

}  // namespace

Chain Chain::from_tensors(const TensorSum& t, ChainMode mode) {
  if (t.empty()) throw std::invalid_argument("from_tensors needs at least one tensor to fix the shape");
  int k = static_cast<int>(t.front().slots.size()) - 1;
  if (k < 0) throw std::invalid_argument("empty tensor");
  int m = t.front().slots.front().rows();
  return build(t, mode, m, k, chart_of(t));
}

void Chain::add(const BasisTensor& t, const Gq& coef) {
  if (static_cast<int>(t.size()) != k_ + 1) throw std::invalid_argument("tensor length does not match chain degree");
  if (coef.is_zero()) return;
  add_raw(t, coef, 1);
}

void Chain::add_raw(BasisTensor t, Gq coef, std::size_t from_slot) {
  if (mode_ == ChainMode::reduced) {
    // E_11 * 1 == -(E_22 + ... + E_mm) modulo scalars.
    for (std::size_t s = from_slot; s < t.size(); ++s) {
      if (t[s] != BasisElt{0, 0, 0}) continue;
      for (int i = 1; i < m_; ++i) {
        t[s] = BasisElt{i, i, 0};
        add_raw(t, -coef, s + 1);
      }
      return;
    }
  }
  if (mode_ == ChainMode::cyclic) {
    int n = static_cast<int>(t.size());
    BasisTensor best = t;
    int best_sign = 1;
    for (int r = 1; r < n; ++r) {
      BasisTensor rot(n);
      for (int s = 0; s < n; ++s) rot[(s + r) % n] = t[s];
      int sign = (k_ * r) % 2 ? -1 : 1;
      if (rot == t && sign < 0) return;
      if (rot < best) {
        best = rot;
        best_sign = sign;
      }
    }
    t = best;
    if (best_sign < 0) coef = -coef;
  }
  auto it = t_.find(t);
  if (it == t_.end()) {
    t_.emplace(std::move(t), coef);
    return;
  }
  it->second += coef;
  if (it->second.is_zero()) t_.erase(it);
}

void Chain::check(const Chain& o) const {
  if (k_ != o.k_ || m_ != o.m_ || mode_ != o.mode_) throw std::invalid_argument("chain shape mismatch");
}

Chain& Chain::operator+=(const Chain& o) {
  check(o);
  if (!chart_) chart_ = o.chart_;
  for (const auto& [t, c] : o.t_) add_raw(t, c, 1);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  check(o);
  if (!chart_) chart_ = o.chart_;
  for (const auto& [t, c] : o.t_) add_raw(t, -c, 1);
  return *this;
}

Chain Chain::scaled(const Gq& s) const {
  Chain out(mode_, m_, k_, chart_);
  if (s.is_zero()) return out;
  for (const auto& [t, c] : t_) out.t_.emplace(t, c * s);
  return out;
}

Chain Chain::in_mode(ChainMode mode) const { return build(to_tensors(), mode, m_, k_, chart_); }

Elem Chain::element(const BasisElt& e) const {
  Elem a(m_, m_);
  a(e.i, e.j) = Poly(chart_, {{e.mono, Gq(1)}});
  return a;
}

TensorSum Chain::to_tensors() const {
  TensorSum out;
  out.reserve(t_.size());
  for (const auto& [t, c] : t_) {
    Tensor x{c, {}};
    for (const auto& e : t) x.slots.push_back(element(e));
    out.push_back(std::move(x));
  }
  return out;
}

TensorSum hochschild_b(const TensorSum& t) {
  TensorSum out;
  for (const auto& x : t) {
    int k = static_cast<int>(x.slots.size()) - 1;
    if (k < 1) continue;
    for (int i = 0; i < k; ++i) {
      Tensor y{(i % 2) ? -x.coef : x.coef, {}};
      for (int s = 0; s <= k; ++s) {
        if (s == i)
          y.slots.push_back(x.slots[s] * x.slots[s + 1]);
        else if (s != i + 1)
          y.slots.push_back(x.slots[s]);
      }
      out.push_back(std::move(y));
    }
    Tensor y{(k % 2) ? -x.coef : x.coef, {x.slots[k] * x.slots[0]}};
    for (int s = 1; s < k; ++s) y.slots.push_back(x.slots[s]);
    out.push_back(std::move(y));
  }
  return out;
}

TensorSum connes_B(const TensorSum& t) {
  TensorSum out;
  for (const auto& x : t) {
    int k = static_cast<int>(x.slots.size()) - 1;
    int m = x.slots.front().rows();
    for (int i = 0; i <= k; ++i) {
      Tensor y{((k * i) % 2) ? -x.coef : x.coef, {Elem::identity(m)}};
      for (int s = 0; s <= k; ++s) y.slots.push_back(x.slots[(i + s) % (k + 1)]);
      out.push_back(std::move(y));
    }
  }
  return out;
}

namespace {

// Product of two basis elements as a combination of basis elements.
std::vector<std::pair<BasisElt, Gq>> mul_basis(const BasisElt& x, const BasisElt& y, const ChartPtr& chart) {
  if (x.j != y.i) return {};
  if (!chart || chart->circles.empty()) return {{BasisElt{x.i, y.j, x.mono + y.mono}, Gq(1)}};
  Poly prod = Poly(chart, {{x.mono, Gq(1)}}) * Poly(chart, {{y.mono, Gq(1)}});
  std::vector<std::pair<BasisElt, Gq>> out;
  for (const auto& [mono, c] : prod.terms()) out.push_back({BasisElt{x.i, y.j, mono}, c});
  return out;
}

}  // namespace

Chain hochschild_b(const Chain& c) {
  int k = c.degree();
  if (k < 1) throw std::invalid_argument("b needs a chain of degree >= 1");
  Chain out(c.mode(), c.size(), k - 1, c.chart());
  for (const auto& [t, coef] : c.terms()) {
    for (int i = 0; i <= k; ++i) {
      // i < k: merge slots i, i+1; i == k: a_k a_0 in front
      const BasisElt& x = (i < k) ? t[i] : t[k];
      const BasisElt& y = (i < k) ? t[i + 1] : t[0];
      for (const auto& [e, v] : mul_basis(x, y, c.chart())) {
        BasisTensor u;
        u.reserve(k);
        if (i < k) {
          for (int s = 0; s < i; ++s) u.push_back(t[s]);
          u.push_back(e);
          for (int s = i + 2; s <= k; ++s) u.push_back(t[s]);
        } else {
          u.push_back(e);
          for (int s = 1; s < k; ++s) u.push_back(t[s]);
        }
        out.add(u, (i % 2) ? -(coef * v) : coef * v);
      }
    }
  }
  return out;
}

Chain connes_B(const Chain& c) {
  if (c.mode() != ChainMode::reduced) throw std::invalid_argument("normalized B acts on reduced chains");
  int k = c.degree();
  Chain out(c.mode(), c.size(), k + 1, c.chart());
  for (const auto& [t, coef] : c.terms())
    for (int i = 0; i <= k; ++i) {
      Gq v = ((k * i) % 2) ? -coef : coef;
      BasisTensor u(k + 2);
      for (int s = 0; s <= k; ++s) u[s + 1] = t[(i + s) % (k + 1)];
      for (int a = 0; a < c.size(); ++a) {
        u[0] = BasisElt{a, a, 0};
        out.add(u, v);
      }
    }
  return out;
}

TensorSum partial_trace(const Gq& coef, const std::vector<Elem>& slots, int blocks) {
  TensorSum out;
  if (slots.empty() || blocks < 1 || slots.front().rows() % blocks) throw std::invalid_argument("bad partial trace shape");
  int m = slots.front().rows() / blocks;
  int k = static_cast<int>(slots.size()) - 1;
  std::vector<int> idx(k + 1, 0);
  while (true) {
    Tensor x{coef, {}};
    bool zero = false;
    for (int s = 0; s <= k && !zero; ++s) {
      Elem b = block_of(slots[s], idx[s], idx[(s + 1) % (k + 1)], m);
      if (b.is_zero()) zero = true;
      x.slots.push_back(std::move(b));
    }
    if (!zero) out.push_back(std::move(x));
    int s = 0;
    while (s <= k && ++idx[s] == blocks) idx[s++] = 0;
    if (s > k) break;
  }
  return out;
}

Gq chern_coefficient(int n) {
  Rational c = factorial(2 * n) / factorial(n);
  return Gq(n % 2 ? Rational(-c) : c);
}

TensorSum chern_cyclic_terms(const Elem& p, int blocks, int n) {
  return partial_trace(chern_coefficient(n), std::vector<Elem>(2 * n + 1, p), blocks);
}

Chain chern_cyclic(const Elem& p, int blocks, int n) {
  return build(chern_cyclic_terms(p, blocks, n), ChainMode::cyclic, p.rows() / blocks, 2 * n,
               chart_of({Tensor{Gq(1), {p}}}));
}

TensorSum chern_bB_terms(const Elem& p, int blocks, int n) {
  std::vector<Elem> slots(2 * n + 1, p);
  slots[0] = p - Elem::identity(p.rows()).times(Poly(Gq::frac(1, 2)));
  return partial_trace(chern_coefficient(n), slots, blocks);
}

Chain chern_bB(const Elem& p, int blocks, int n) {
  return build(chern_bB_terms(p, blocks, n), ChainMode::reduced, p.rows() / blocks, 2 * n,
               chart_of({Tensor{Gq(1), {p}}}));
}

AlgebraMorphism amplification(const MatQ& U, int r, int zeros, int m) {
  int N = r + zeros;
  if (U.rows() != N || U.cols() != N) throw std::invalid_argument("amplification unitary has the wrong size");
  Elem Ub(N * m, N * m), Ubs(N * m, N * m);
  MatQ Us = U.adjoint();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < m; ++a) {
        Ub(i * m + a, j * m + a) = Poly(U(i, j));
        Ubs(i * m + a, j * m + a) = Poly(Us(i, j));
      }
  AlgebraMorphism alpha;
  alpha.blocks = N;
  alpha.apply = [=](const Elem& a) {
    Elem big(N * m, N * m);
    for (int b = 0; b < r; ++b) big.set_block(b * m, b * m, a);
    return Ub * big * Ubs;
  };
  alpha.unit_image = alpha.apply(Elem::identity(m));
  return alpha;
}

TensorSum pushforward_tensors(const AlgebraMorphism& alpha, const TensorSum& t) {
  TensorSum out;
  for (const auto& x : t) {
    std::vector<Elem> img;
    for (const auto& a : x.slots) img.push_back(alpha.apply(a));
    auto part = partial_trace(x.coef, img, alpha.blocks);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Chain pushforward_chain(const AlgebraMorphism& alpha, const Chain& c) {
  Elem one = alpha.apply(Elem::identity(c.size()));
  if (!(one == alpha.unit_image)) throw std::domain_error("alpha is not unital onto p");
  if (c.mode() == ChainMode::reduced && !(one == Elem::identity(one.rows())))
    throw std::domain_error("reduced chains push forward only along unital morphisms");
  int m = one.rows() / alpha.blocks;
  ChartPtr chart = c.chart();
  auto t = pushforward_tensors(alpha, c.to_tensors());
  if (!chart) chart = chart_of(t);
  return build(t, c.mode(), m, c.degree(), chart);
}

bool is_projection(const Elem& p) { return p * p == p && p.adjoint() == p; }

std::string to_text(const Chain& c) {
  static const char* names[] = {"hochschild", "reduced", "cyclic"};
  std::ostringstream os;
  os << "chain mode=" << names[static_cast<int>(c.mode())] << " degree=" << c.degree() << " size=" << c.size()
     << " terms=" << c.terms().size() << "\n";
  for (const auto& [t, coef] : c.terms()) {
    os << "  " << to_string(coef) << " :";
    for (const auto& e : t) {
      os << " E" << e.i + 1 << "," << e.j + 1;
      if (e.mono) os << "*" << Poly(c.chart(), {{e.mono, Gq(1)}}).str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ptk
