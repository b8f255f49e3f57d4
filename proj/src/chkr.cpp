#include "ptk/chkr.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ptk {

std::uint64_t fibonacci(int n) {
  std::uint64_t a = 0, b = 1;
  for (int i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

Form as_form(const ConnectionData& conn, const Elem& a) { return Form::function(conn.theta.dim(), a); }

namespace {

Form one_like(const ConnectionData& conn) { return Form::identity(conn.theta.dim(), conn.theta.size()); }

Form psi_range(const ConnectionData& conn, const std::vector<Form>& a, int lo, int hi) {
  // psi of a[lo..hi), by the recursion from the right end.
  int n = hi - lo;
  if (n < 0) return Form(conn.theta.dim(), conn.theta.size());
  std::vector<Form> P(n + 2, Form(conn.theta.dim(), conn.theta.size()));
  P[n] = one_like(conn);
  for (int s = n - 1; s >= 0; --s) {
    P[s] = nabla(conn, a[lo + s]) * P[s + 1];
    if (s + 1 < n) P[s] += a[lo + s] * conn.sigma * a[lo + s + 1] * P[s + 2];
  }
  return P[0];
}

}  // namespace

PsiExpansion psi(const ConnectionData& conn, const std::vector<Form>& a) {
  PsiExpansion out;
  out.k = static_cast<int>(a.size());
  out.sum = Form(conn.theta.dim(), conn.theta.size());
  std::vector<Form> grad;
  for (const auto& x : a) grad.push_back(nabla(conn, x));
  std::function<void(int, Form)> rec = [&](int i, Form acc) {
    if (i == out.k) {
      out.sum += acc;
      out.terms.push_back(std::move(acc));
      return;
    }
    rec(i + 1, acc * grad[i]);
    if (i + 1 < out.k) rec(i + 2, acc * a[i] * conn.sigma * a[i + 1]);
  };
  rec(0, one_like(conn));
  return out;
}

Form psi_recursive(const ConnectionData& conn, const std::vector<Form>& a) {
  return psi_range(conn, a, 0, static_cast<int>(a.size()));
}

Form rho(const ConnectionData& conn, const std::vector<Form>& a) {
  if (a.empty()) throw std::invalid_argument("rho needs at least a_0");
  int k = static_cast<int>(a.size()) - 1;
  if (k > conn.theta.dim()) return Form(conn.theta.dim(), 1);
  return (a[0] * psi_range(conn, a, 1, k + 1)).trace();
}

Form rho(const ConnectionData& conn, const TensorSum& t) {
  Form out(conn.theta.dim(), 1);
  for (const auto& x : t) {
    if (static_cast<int>(x.slots.size()) - 1 > conn.theta.dim()) continue;
    std::vector<Form> a;
    for (const auto& e : x.slots) a.push_back(as_form(conn, e));
    out += rho(conn, a).scaled(x.coef);
  }
  return out;
}

Form rho(const ConnectionData& conn, const Chain& c) { return rho(conn, c.to_tensors()); }

Form cyclic_defect(const ConnectionData& conn, const std::vector<Form>& a) {
  int k = static_cast<int>(a.size()) - 1;
  std::vector<Form> rot{a[k]};
  rot.insert(rot.end(), a.begin(), a.end() - 1);
  Form lhs = rho(conn, a);
  if (k % 2 == 0) lhs = -lhs;
  lhs += rho(conn, rot);
  if (k >= 1) lhs -= d((a[0] * psi_range(conn, a, 1, k) * a[k]).trace());
  return lhs;
}

IdentityCheck verify_induction_identity(const ConnectionData& conn, const std::vector<Form>& a) {
  int k = static_cast<int>(a.size()) - 1;
  Form lhs = a[0] * psi_range(conn, a, 1, k + 1);
  if (k % 2 == 0) lhs = -lhs;
  lhs += psi_range(conn, a, 0, k) * a[k];
  if (k >= 1) lhs -= nabla(conn, a[0] * psi_range(conn, a, 1, k) * a[k]);
  return {lhs.is_zero(), lhs};
}

Rational simplex_moment(const std::vector<int>& m) {
  if (m.empty()) throw std::invalid_argument("simplex needs at least one vertex");
  int k = static_cast<int>(m.size()) - 1;
  Rational num(1);
  int total = k;
  for (int x : m) {
    if (x < 0) throw std::invalid_argument("negative simplex moment");
    num *= factorial(x);
    total += x;
  }
  Rational r = num / factorial(total);
  r.canonicalize();
  return r;
}

Form jlo_chkr(const ConnectionData& conn, const std::vector<Form>& a) {
  int dim = conn.theta.dim();
  int k = static_cast<int>(a.size()) - 1;
  Form out(dim, 1);
  if (k > dim) return out;
  std::vector<Form> grad;
  for (int i = 1; i <= k; ++i) grad.push_back(nabla(conn, a[i]));
  std::vector<Form> spow{one_like(conn)};
  for (int j = 1; 2 * j <= dim - k; ++j) spow.push_back(spow.back() * conn.sigma);
  int budget = (dim - k) / 2;
  std::vector<int> j(k + 1, 0);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == k + 1) {
      Rational c = simplex_moment(j);
      int J = 0;
      for (int x : j) {
        c /= factorial(x);
        J += x;
      }
      Form prod = a[0] * spow[j[0]];
      for (int i = 1; i <= k; ++i) prod = prod * grad[i - 1] * spow[j[i]];
      out += prod.trace().scaled(Gq(J % 2 ? Rational(-c) : c));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      j[slot] = x;
      rec(slot + 1, left - x);
    }
    j[slot] = 0;
  };
  rec(0, budget);
  return out;
}

Form jlo_chkr(const ConnectionData& conn, const TensorSum& t) {
  Form out(conn.theta.dim(), 1);
  for (const auto& x : t) {
    std::vector<Form> a;
    for (const auto& e : x.slots) a.push_back(as_form(conn, e));
    out += jlo_chkr(conn, a).scaled(x.coef);
  }
  return out;
}

ConnectionData amplify(const ConnectionData& conn, int blocks) {
  auto amp = [&](const Form& f) {
    Form g(f.dim(), f.size() * blocks);
    for (const auto& [I, a] : f.comps()) g.add(I, kron(Matrix<Poly>::identity(blocks), a));
    return g;
  };
  return {amp(conn.theta), amp(conn.omega), amp(conn.sigma)};
}

Form rho_chern_closed_form(const ConnectionData& conn, const Elem& p, int blocks, int n) {
  ConnectionData big = amplify(conn, blocks);
  Form P = as_form(big, p);
  Form q = psi_recursive(big, {P, P});
  Form acc = P;
  for (int i = 0; i < n; ++i) acc = acc * q;
  return acc.trace().scaled(chern_coefficient(n));
}

Form rho_of_chern(const ConnectionData& conn, const Elem& p, int blocks) {
  Form out(conn.theta.dim(), 1);
  for (int n = 0; 2 * n <= conn.theta.dim(); ++n) out += rho(conn, chern_cyclic_terms(p, blocks, n));
  return out;
}

Form jlo_of_chern(const ConnectionData& conn, const Elem& p, int blocks) {
  Form out(conn.theta.dim(), 1);
  for (int n = 0; 2 * n <= conn.theta.dim(); ++n) out += jlo_chkr(conn, chern_cyclic_terms(p, blocks, n));
  return out;
}

Poly top_coefficient(const Form& f) {
  if (f.size() != 1) throw std::invalid_argument("top_coefficient needs a scalar form");
  return f.coeff((FormMask(1) << f.dim()) - 1);
}

cd integrate_top_trapezoid(const Form& f, const ChartPtr& torus, int n) {
  if (torus->kind != Chart::Kind::torus) throw std::invalid_argument("trapezoid rule needs a torus chart");
  Poly c = top_coefficient(f);
  int dim = torus->dim;
  std::vector<int> idx(dim, 0);
  std::vector<double> pt(dim);
  cd sum(0, 0);
  while (true) {
    for (int i = 0; i < dim; ++i) pt[i] = 2 * M_PI * idx[i] / n;
    sum += c.eval(torus->variable_values(pt));
    int s = 0;
    while (s < dim && ++idx[s] == n) idx[s++] = 0;
    if (s == dim) break;
  }
  return sum * std::pow(2 * M_PI / n, dim);
}

std::string ChkrComparison::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "degree = " << degree << "\n"
     << "jlo_exact = " << jlo_exact.str() << "\n"
     << "rho_exact = " << rho_exact.str() << "\n"
     << "jlo_numeric = " << jlo_numeric.real() << " " << jlo_numeric.imag() << "\n"
     << "rho_numeric = " << rho_numeric.real() << " " << rho_numeric.imag() << "\n"
     << "exact_agree = " << (exact_agree ? "true" : "false") << "\n"
     << "numeric_difference = " << numeric_difference << "\n";
  return os.str();
}

ChkrComparison compare_chkr_rho(const ConnectionData& conn, const Elem& p, int blocks, const ChartPtr& torus, int grid,
                                bool torsion_twist) {
  if (!torsion_twist) throw std::invalid_argument("the partition map is only defined for torsion twists");
  if (!is_projection(p)) throw std::invalid_argument("compare_chkr_rho needs a projection");
  int dim = conn.theta.dim();
  if (torus->dim != dim) throw std::invalid_argument("chart dimension mismatch");
  Form j = jlo_of_chern(conn, p, blocks).degree_part(dim);
  Form r = rho_of_chern(conn, p, blocks).degree_part(dim).scaled(Gq(Rational(1) / factorial(dim)));
  ChkrComparison out;
  out.degree = dim;
  out.jlo_exact = integrate_exact(top_coefficient(j), torus);
  out.rho_exact = integrate_exact(top_coefficient(r), torus);
  out.jlo_numeric = integrate_top_trapezoid(j, torus, grid);
  out.rho_numeric = integrate_top_trapezoid(r, torus, grid);
  out.exact_agree = out.jlo_exact == out.rho_exact;
  out.numeric_difference = std::abs(out.jlo_numeric - out.rho_numeric);
  return out;
}

}  // namespace ptk
