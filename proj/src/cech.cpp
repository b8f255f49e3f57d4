#include "ptk/cech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace ptk {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& x) const {
  if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("integer matrix shape mismatch");
  std::vector<Integer> y(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("integer matrix shape mismatch");
  IntMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

class SmithWork {
 public:
  explicit SmithWork(const IntMatrix& A)
      : A(A), U(IntMatrix::identity(A.rows)), Ui(IntMatrix::identity(A.rows)), V(IntMatrix::identity(A.cols)),
        Vi(IntMatrix::identity(A.cols)) {}

  // row i += c row j
  void row_add(int i, int j, const Integer& c) {
    for (int k = 0; k < A.cols; ++k) A(i, k) += c * A(j, k);
    for (int k = 0; k < U.cols; ++k) U(i, k) += c * U(j, k);
    for (int k = 0; k < Ui.rows; ++k) Ui(k, j) -= c * Ui(k, i);
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < A.cols; ++k) std::swap(A(i, k), A(j, k));
    for (int k = 0; k < U.cols; ++k) std::swap(U(i, k), U(j, k));
    for (int k = 0; k < Ui.rows; ++k) std::swap(Ui(k, i), Ui(k, j));
  }
  void row_neg(int i) {
    for (int k = 0; k < A.cols; ++k) A(i, k) = -A(i, k);
    for (int k = 0; k < U.cols; ++k) U(i, k) = -U(i, k);
    for (int k = 0; k < Ui.rows; ++k) Ui(k, i) = -Ui(k, i);
  }
  // column i += c column j
  void col_add(int i, int j, const Integer& c) {
    for (int k = 0; k < A.rows; ++k) A(k, i) += c * A(k, j);
    for (int k = 0; k < V.rows; ++k) V(k, i) += c * V(k, j);
    for (int k = 0; k < Vi.cols; ++k) Vi(j, k) -= c * Vi(i, k);
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < A.rows; ++k) std::swap(A(k, i), A(k, j));
    for (int k = 0; k < V.rows; ++k) std::swap(V(k, i), V(k, j));
    for (int k = 0; k < Vi.cols; ++k) std::swap(Vi(i, k), Vi(j, k));
  }

  IntMatrix A, U, Ui, V, Vi;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A0) {
  SmithWork w(A0);
  IntMatrix& A = w.A;
  int m = A.rows, n = A.cols;
  std::vector<Integer> diag;
  for (int t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (sgn(A(i, j)) != 0 && (pi < 0 || cmpabs(A(i, j), A(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (sgn(A(i, t)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        w.row_add(i, t, -q);
        if (sgn(A(i, t)) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (sgn(A(t, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        w.col_add(j, t, -q);
        if (sgn(A(t, j)) != 0) clean = false;
      }
      if (!clean) {
        int bi = t, bj = t;
        for (int i = t + 1; i < m; ++i)
          if (sgn(A(i, t)) != 0 && cmpabs(A(i, t), A(bi, bj)) < 0) bi = i, bj = t;
        for (int j = t + 1; j < n; ++j)
          if (sgn(A(t, j)) != 0 && cmpabs(A(t, j), A(bi, bj)) < 0) bi = t, bj = j;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.row_add(t, bad, Integer(1));
    }
    if (sgn(A(t, t)) < 0) w.row_neg(t);
    diag.push_back(A(t, t));
  }
  return {std::move(w.U), std::move(w.Ui), std::move(w.V), std::move(w.Vi), std::move(diag)};
}

std::optional<std::vector<Integer>> integer_solve(const IntMatrix& A, const std::vector<Integer>& b) {
  SmithForm S = smith_normal_form(A);
  std::vector<Integer> y = S.U.apply(b);
  std::vector<Integer> z(A.cols);
  for (int i = 0; i < A.rows; ++i) {
    if (i < S.rank()) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), S.diag[i].get_mpz_t())) return std::nullopt;
      z[i] = y[i] / S.diag[i];
    } else if (sgn(y[i]) != 0) {
      return std::nullopt;
    }
  }
  return S.V.apply(z);
}

Nerve Nerve::from_simplices(const std::vector<Simplex>& simplices) {
  std::set<Simplex> all;
  for (Simplex s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.empty()) throw std::invalid_argument("bad simplex");
    int k = static_cast<int>(s.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex f;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) f.push_back(s[i]);
      all.insert(f);
    }
  }
  Nerve N;
  for (const auto& s : all) {
    std::size_t k = s.size() - 1;
    if (N.s_.size() <= k) N.s_.resize(k + 1);
    N.s_[k].push_back(s);
  }
  N.idx_.resize(N.s_.size());
  for (std::size_t k = 0; k < N.s_.size(); ++k)
    for (std::size_t i = 0; i < N.s_[k].size(); ++i) N.idx_[k][N.s_[k][i]] = static_cast<int>(i);
  return N;
}

Nerve Nerve::boundary_of_4_simplex() {
  std::vector<Simplex> faces;
  for (int skip = 0; skip < 5; ++skip) {
    Simplex s;
    for (int v = 0; v < 5; ++v)
      if (v != skip) s.push_back(v);
    faces.push_back(s);
  }
  return from_simplices(faces);
}

int Nerve::vertex_count() const { return s_.empty() ? 0 : static_cast<int>(s_[0].size()); }

const std::vector<Simplex>& Nerve::simplices(int k) const {
  static const std::vector<Simplex> none;
  return (k < 0 || k >= static_cast<int>(s_.size())) ? none : s_[k];
}

int Nerve::index(const Simplex& s) const {
  std::size_t k = s.size() - 1;
  if (s.empty() || k >= idx_.size()) return -1;
  auto it = idx_[k].find(s);
  return it == idx_[k].end() ? -1 : it->second;
}

IntMatrix Nerve::coboundary(int k) const {
  const auto& hi = simplices(k + 1);
  const auto& lo = simplices(k);
  IntMatrix M(static_cast<int>(hi.size()), static_cast<int>(lo.size()));
  for (std::size_t r = 0; r < hi.size(); ++r)
    for (int i = 0; i <= k + 1; ++i) {
      Simplex f = hi[r];
      f.erase(f.begin() + i);
      M(static_cast<int>(r), index(f)) += (i % 2) ? -1 : 1;
    }
  return M;
}

Nerve Nerve::relabeled(const std::vector<int>& perm) const {
  std::vector<Simplex> top;
  for (const auto& level : s_)
    for (Simplex s : level) {
      for (auto& v : s) v = perm.at(v);
      top.push_back(s);
    }
  return from_simplices(top);
}

std::vector<Integer> coboundary(const Nerve& N, int k, const std::vector<Integer>& f) { return N.coboundary(k).apply(f); }

MatC UnitaryCochain::get(int i, int j) const {
  if (is_exact()) return to_numeric(get_exact(i, j));
  if (i < j) return numeric.at({i, j});
  return numeric.at({j, i}).adjoint();
}

MatQ UnitaryCochain::get_exact(int i, int j) const {
  if (!is_exact()) throw std::logic_error("transition data is numeric");
  if (i < j) return exact.at({i, j});
  return exact.at({j, i}).adjoint();
}

DDCocycle scalar_check_and_mu(const UnitaryCochain& g, const Nerve& N, double tol) {
  DDCocycle out;
  out.exact = g.is_exact();
  for (const auto& s : N.simplices(2)) {
    int i = s[0], j = s[1], k = s[2];
    cd mu;
    if (out.exact) {
      MatQ M = g.get_exact(i, j) * g.get_exact(j, k) * g.get_exact(k, i);
      Gq z = M(0, 0);
      if (!(M == MatQ::scalar(g.n, z))) throw std::domain_error("transition data is not a projective cocycle");
      out.mu_exact.push_back(z);
      mu = z.to_complex();
    } else {
      MatC M = g.get(i, j) * g.get(j, k) * g.get(k, i);
      mu = M(0, 0);
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          if (std::abs(M(a, b) - (a == b ? mu : cd(0, 0))) > tol)
            throw std::domain_error("transition data is not a projective cocycle");
    }
    if (std::abs(std::abs(mu) - 1.0) > tol) throw std::domain_error("triple product is not a unit scalar");
    out.mu.push_back(mu);
    double nu = std::atan2(mu.imag(), mu.real()) / (2 * M_PI);
    if (nu < 0) nu += 1;
    if (nu >= 1) nu = 0;
    out.nu.push_back(nu);
  }
  out.dmu_is_one = true;
  for (const auto& s : N.simplices(3)) {
    double acc = 0;
    Gq prod(1);
    cd nprod(1, 0);
    for (int f = 0; f < 4; ++f) {
      Simplex face = s;
      face.erase(face.begin() + f);
      int id = N.index(face);
      acc += (f % 2) ? -out.nu[id] : out.nu[id];
      if (out.exact)
        prod *= (f % 2) ? out.mu_exact[id].conj() : out.mu_exact[id];
      else
        nprod *= (f % 2) ? std::conj(out.mu[id]) : out.mu[id];
    }
    long r = std::lround(acc);
    out.max_rounding = std::max(out.max_rounding, std::abs(acc - r));
    out.delta.push_back(r);
    if (out.exact ? !(prod == Gq(1)) : std::abs(nprod - cd(1, 0)) > tol) out.dmu_is_one = false;
  }
  if (out.max_rounding > 1e-6) throw std::domain_error("coboundary of nu is not integral");
  return out;
}

bool CohomologyClass::is_zero() const {
  for (const auto& c : torsion_coords)
    if (sgn(c) != 0) return false;
  for (const auto& c : free_coords)
    if (sgn(c) != 0) return false;
  return true;
}

Integer CohomologyClass::order() const {
  for (const auto& c : free_coords)
    if (sgn(c) != 0) return 0;
  Integer o = 1;
  for (std::size_t i = 0; i < torsion_orders.size(); ++i) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), torsion_orders[i].get_mpz_t(), torsion_coords[i].get_mpz_t());
    Integer e = torsion_orders[i] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), e.get_mpz_t());
  }
  return o;
}

std::string CohomologyClass::to_text() const {
  std::ostringstream os;
  os << "degree = " << degree << "\n";
  os << "group = ";
  bool first = true;
  for (int i = 0; i < free_rank; ++i, first = false) os << (first ? "" : " + ") << "Z";
  for (const auto& d : torsion_orders) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  os << "\n";
  os << "torsion_coords =";
  for (const auto& c : torsion_coords) os << " " << c.get_str();
  os << "\nfree_coords =";
  for (const auto& c : free_coords) os << " " << c.get_str();
  os << "\nzero = " << (is_zero() ? "true" : "false") << "\n";
  os << "order = " << (sgn(order()) == 0 ? std::string("infinite") : order().get_str()) << "\n";
  return os.str();
}

CohomologyClass cohomology_class(const Nerve& N, int k, const std::vector<Integer>& f) {
  int nk = static_cast<int>(N.simplices(k).size());
  if (static_cast<int>(f.size()) != nk) throw std::invalid_argument("cochain length mismatch");
  IntMatrix B = N.coboundary(k);
  for (const auto& x : B.apply(f))
    if (sgn(x) != 0) throw std::invalid_argument("cochain is not closed");
  IntMatrix A = k > 0 ? N.coboundary(k - 1) : IntMatrix(nk, 0);
  SmithForm S = smith_normal_form(A);
  int r = S.rank();
  std::vector<Integer> y = S.U.apply(f);
  CohomologyClass out;
  out.degree = k;
  for (int i = 0; i < r; ++i)
    if (S.diag[i] > 1) {
      out.torsion_orders.push_back(S.diag[i]);
      Integer c;
      mpz_fdiv_r(c.get_mpz_t(), y[i].get_mpz_t(), S.diag[i].get_mpz_t());
      out.torsion_coords.push_back(c);
    }
  // free part: kernel of B Uinv restricted to coordinates >= r
  IntMatrix BU = B * S.Uinv;
  IntMatrix Bp(BU.rows, nk - r);
  for (int i = 0; i < BU.rows; ++i)
    for (int j = r; j < nk; ++j) Bp(i, j - r) = BU(i, j);
  SmithForm S2 = smith_normal_form(Bp);
  out.free_rank = (nk - r) - S2.rank();
  std::vector<Integer> yp(y.begin() + r, y.end());
  std::vector<Integer> c = S2.Vinv.apply(yp);
  for (int i = S2.rank(); i < nk - r; ++i) out.free_coords.push_back(c[i]);
  return out;
}

CohomologyClass h3_class(const Nerve& N, const std::vector<long>& delta) {
  std::vector<Integer> f(delta.begin(), delta.end());
  return cohomology_class(N, 3, f);
}

std::optional<std::vector<Integer>> torsion_witness(const Nerve& N, const std::vector<long>& delta, long n) {
  std::vector<Integer> b;
  for (long x : delta) b.push_back(Integer(x) * n);
  return integer_solve(N.coboundary(2), b);
}

UnitaryCochain lift_from_determinant(const UnitaryCochain& g) {
  UnitaryCochain out;
  out.n = g.n;
  auto edges = g.is_exact() ? std::vector<std::pair<int, int>>() : std::vector<std::pair<int, int>>();
  for (const auto& [e, m] : g.exact) edges.push_back(e);
  for (const auto& [e, m] : g.numeric) edges.push_back(e);
  for (const auto& e : edges) {
    MatC m = g.get(e.first, e.second);
    Eigen::MatrixXcd E(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) E(i, j) = m(i, j);
    cd det = E.determinant();
    cd lambda = std::polar(1.0, -std::arg(det) / g.n);
    out.numeric[e] = m.times(lambda);
  }
  return out;
}

UnitaryCochain rephased(const UnitaryCochain& g, const std::map<std::pair<int, int>, cd>& lambda) {
  UnitaryCochain out;
  out.n = g.n;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [e, m] : g.exact) edges.push_back(e);
  for (const auto& [e, m] : g.numeric) edges.push_back(e);
  for (const auto& e : edges) {
    auto it = lambda.find(e);
    cd l = it == lambda.end() ? cd(1, 0) : it->second;
    out.numeric[e] = g.get(e.first, e.second).times(l);
  }
  return out;
}

UnitaryCochain relabeled(const UnitaryCochain& g, const std::vector<int>& perm) {
  UnitaryCochain out;
  out.n = g.n;
  for (const auto& [e, m] : g.exact) {
    int a = perm.at(e.first), b = perm.at(e.second);
    if (a < b)
      out.exact[{a, b}] = m;
    else
      out.exact[{b, a}] = m.adjoint();
  }
  for (const auto& [e, m] : g.numeric) {
    int a = perm.at(e.first), b = perm.at(e.second);
    if (a < b)
      out.numeric[{a, b}] = m;
    else
      out.numeric[{b, a}] = m.adjoint();
  }
  return out;
}

MatQ pauli(int k) {
  MatQ m(2, 2);
  switch (k) {
    case 0:
      return MatQ::identity(2);
    case 1:
      m(0, 1) = Gq(1);
      m(1, 0) = Gq(1);
      return m;
    case 2:
      m(0, 1) = -Gq::I();
      m(1, 0) = Gq::I();
      return m;
    case 3:
      m(0, 0) = Gq(1);
      m(1, 1) = Gq(-1);
      return m;
    default:
      throw std::out_of_range("Pauli index");
  }
}

CechScenario pauli_triangle() {
  CechScenario sc{Nerve::from_simplices({{0, 1, 2}}), {}};
  sc.transitions.n = 2;
  sc.transitions.exact[{0, 1}] = pauli(1);
  sc.transitions.exact[{1, 2}] = pauli(2);
  sc.transitions.exact[{0, 2}] = pauli(3).adjoint();  // g_20 = sigma_z
  return sc;
}

namespace {

// A Z/2 1-cocycle on the edges of N that is not a coboundary (brute force).
std::map<std::pair<int, int>, int> nontrivial_z2_cocycle(const Nerve& N) {
  const auto& E = N.simplices(1);
  const auto& T = N.simplices(2);
  int nv = N.vertex_count();
  auto edge_bit = [&](unsigned long mask, int a, int b) { return static_cast<int>(mask >> N.index({a, b}) & 1); };
  for (unsigned long mask = 1; mask < (1ul << E.size()); ++mask) {
    bool closed = true;
    for (const auto& t : T)
      if ((edge_bit(mask, t[0], t[1]) + edge_bit(mask, t[1], t[2]) + edge_bit(mask, t[0], t[2])) % 2) {
        closed = false;
        break;
      }
    if (!closed) continue;
    bool exact = false;
    for (unsigned long f = 0; f < (1ul << nv) && !exact; ++f) {
      exact = true;
      for (const auto& e : E)
        if (static_cast<int>((f >> e[0] ^ f >> e[1]) & 1) != edge_bit(mask, e[0], e[1])) {
          exact = false;
          break;
        }
    }
    if (exact) continue;
    std::map<std::pair<int, int>, int> out;
    for (const auto& e : E) out[{e[0], e[1]}] = edge_bit(mask, e[0], e[1]);
    return out;
  }
  throw std::logic_error("no nontrivial Z/2 cocycle");
}

MatQ x_pow_z_pow(int a, int b) {
  MatQ m = MatQ::identity(2);
  if (a) m = m * pauli(1);
  if (b) m = m * pauli(3);
  return m;
}

}  // namespace

CechScenario rp2_times_circle() {
  std::vector<Simplex> rp2 = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                              {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};
  std::vector<Simplex> circle = {{0, 1}, {1, 2}, {0, 2}};
  Nerve A = Nerve::from_simplices(rp2), C = Nerve::from_simplices(circle);
  auto a = nontrivial_z2_cocycle(A);
  auto b = nontrivial_z2_cocycle(C);
  const int q = 3;
  // staircase triangulation of each triangle x edge
  std::vector<Simplex> top;
  for (const auto& s : rp2)
    for (const auto& t : circle) {
      // paths from (0,0) to (2,1) with unit steps
      for (int up = 0; up <= 2; ++up) {
        Simplex path;
        int i = 0, j = 0;
        path.push_back(s[i] * q + t[j]);
        for (int step = 0; step < 3; ++step) {
          if (step == up)
            ++j;
          else
            ++i;
          path.push_back(s[i] * q + t[j]);
        }
        top.push_back(path);
      }
    }
  CechScenario sc{Nerve::from_simplices(top), {}};
  sc.transitions.n = 2;
  for (const auto& e : sc.nerve.simplices(1)) {
    int u0 = e[0] / q, t0 = e[0] % q, u1 = e[1] / q, t1 = e[1] % q;
    int ea = u0 == u1 ? 0 : a.at({std::min(u0, u1), std::max(u0, u1)});
    int eb = t0 == t1 ? 0 : b.at({std::min(t0, t1), std::max(t0, t1)});
    sc.transitions.exact[{e[0], e[1]}] = x_pow_z_pow(ea, eb);
  }
  return sc;
}

std::string to_text(const DDCocycle& c, const Nerve& N) {
  std::ostringstream os;
  os.precision(17);
  os << "exact = " << (c.exact ? "true" : "false") << "\n";
  os << "dmu_is_one = " << (c.dmu_is_one ? "true" : "false") << "\n";
  const auto& T = N.simplices(2);
  for (std::size_t i = 0; i < T.size(); ++i) {
    os << "mu[" << T[i][0] << " " << T[i][1] << " " << T[i][2] << "] = ";
    if (c.exact)
      os << to_string(c.mu_exact[i]);
    else
      os << c.mu[i].real() << " " << c.mu[i].imag();
    os << "\n";
  }
  const auto& Q = N.simplices(3);
  for (std::size_t i = 0; i < Q.size(); ++i)
    if (c.delta[i] != 0)
      os << "delta[" << Q[i][0] << " " << Q[i][1] << " " << Q[i][2] << " " << Q[i][3] << "] = " << c.delta[i] << "\n";
  os << "max_rounding = " << c.max_rounding << "\n";
  return os.str();
}

}  // namespace ptk
