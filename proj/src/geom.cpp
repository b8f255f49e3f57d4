#include "ptk/geom.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ptk/clifford.hpp"
#include "ptk/random.hpp"

namespace ptk {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

FormMask top_mask(int d) { return (FormMask(1) << d) - 1; }

Form scalar_form(int d, FormMask I, const Poly& c) {
  Matrix<Poly> a(1, 1);
  a(0, 0) = c;
  return Form::basis(d, I, a);
}

// Places the scalar form s at entry (k, l) of an n x n matrix form.
void add_entry(Form& out, int k, int l, const Form& s) {
  for (const auto& [I, a] : s.comps()) {
    Matrix<Poly> m(out.size(), out.size());
    m(k, l) = a(0, 0);
    out.add(I, m);
  }
}

Form entry(const Form& f, int k, int l) {
  Form s(f.dim(), 1);
  for (const auto& [I, a] : f.comps())
    if (!a(k, l).is_zero()) s.add(I, [&] {
        Matrix<Poly> m(1, 1);
        m(0, 0) = a(k, l);
        return m;
      }());
  return s;
}

// Scalar form times a constant matrix.
Form times_matrix(const Form& s, const MatQ& b) {
  Form out(s.dim(), b.rows());
  Matrix<Poly> bp = to_poly_matrix(b);
  for (const auto& [I, a] : s.comps()) out.add(I, bp.times(a(0, 0)));
  return out;
}

MatQ left_of_product(int d, int l, int k) {
  return left_matrix(CliffordElement::gen(d, l + 1) * CliffordElement::gen(d, k + 1));
}

Form zero_or(const Form& f, int d, int m) { return f.size() == m && f.dim() == d ? f : Form(d, m); }

cd pi_value(const PiSeries& s) { return s.value(); }

}  // namespace

// ---------------------------------------------------------------- quadrature

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    x[i] = 0.5 * (b - a) * t + 0.5 * (b + a);
    w[i] = (b - a) * v * v;  // 2 v^2 on [-1, 1], scaled by (b - a)/2
  }
}

cd Quadrature::integrate(const Poly& f) const {
  cd s = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f.eval(chart->variable_values(nodes[k]));
  return s;
}

Quadrature Geometry::quadrature(int level) const {
  if (!closed) throw std::invalid_argument("formal geometries carry no quadrature");
  if (level < 0) throw std::invalid_argument("quadrature level must be nonnegative");
  Quadrature q;
  q.chart = chart;
  if (chart->kind == Chart::Kind::sphere) {
    int nt = 4 + level, np = 2 * nt + 8;
    std::vector<double> x, w;
    gauss_legendre(nt, 0, std::numbers::pi, x, w);
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < np; ++b) {
        q.nodes.push_back({x[a], kTwoPi * b / np});
        q.weights.push_back(w[a] * kTwoPi / np);
      }
  } else if (chart->kind == Chart::Kind::torus) {
    int n = 8 + 4 * level;
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= n;
    double wt = std::pow(kTwoPi / n, dim);
    for (int idx = 0; idx < total; ++idx) {
      std::vector<double> c(dim);
      for (int i = 0, r = idx; i < dim; ++i, r /= n) c[i] = kTwoPi * (r % n) / n;
      q.nodes.push_back(c);
      q.weights.push_back(wt);
    }
  } else {
    throw std::invalid_argument("no quadrature for this chart");
  }
  return q;
}

// ---------------------------------------------------------------- geometries

Form Geometry::curvature() const {
  Form out(dim, dim);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l)
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
          const Poly& r = R(i, j, l, k);
          if (r.is_zero()) continue;
          Form e = coframe[i] * coframe[j];
          add_entry(out, k, l, scalar_wedge(Form::scalar(dim, r), e));
        }
  return out;
}

Geometry sphere2() {
  Geometry g;
  g.name = "sphere2";
  g.chart = Chart::sphere();
  g.dim = 2;
  Poly cth = Poly::var(g.chart, 0), sth = Poly::var(g.chart, 1);
  g.coframe = {scalar_form(2, 1, Poly(1)), scalar_form(2, 2, sth)};
  g.connection = Form(2, 2);
  add_entry(g.connection, 0, 1, scalar_form(2, 2, -cth));
  add_entry(g.connection, 1, 0, scalar_form(2, 2, cth));
  g.riemann.assign(16, Poly());
  // R_ijkl = -(delta_ik delta_jl - delta_il delta_jk): sectional curvature +1.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          long v = -((i == k && j == l) - (i == l && j == k));
          if (v) g.riemann[((i * 2 + j) * 2 + k) * 2 + l] = Poly(v);
        }
  g.volume = sth;
  return g;
}

Geometry torus2() {
  Geometry g;
  g.name = "torus2";
  g.chart = Chart::torus(2);
  g.dim = 2;
  g.coframe = {scalar_form(2, 1, Poly(1)), scalar_form(2, 2, Poly(1))};
  g.connection = Form(2, 2);
  g.riemann.assign(16, Poly());
  g.volume = Poly(1);
  return g;
}

Geometry formal4(const std::vector<Rational>& R) {
  if (R.size() != 256) throw std::invalid_argument("formal4 needs 4^4 curvature components");
  Geometry g;
  g.name = "formal4";
  g.chart = Chart::polynomial(4);
  g.dim = 4;
  for (int i = 0; i < 4; ++i) g.coframe.push_back(scalar_form(4, FormMask(1) << i, Poly(1)));
  g.connection = Form(4, 4);
  for (const auto& r : R) g.riemann.push_back(Poly(Gq(r)));
  g.volume = Poly(1);
  g.closed = false;
  return g;
}

std::vector<Rational> kulkarni_nomizu(const std::vector<std::vector<Rational>>& h,
                                      const std::vector<std::vector<Rational>>& k) {
  int d = static_cast<int>(h.size());
  std::vector<Rational> R(static_cast<std::size_t>(d) * d * d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          R[((i * d + j) * d + a) * d + b] =
              h[i][a] * k[j][b] + h[j][b] * k[i][a] - h[i][b] * k[j][a] - h[j][a] * k[i][b];
  return R;
}

CurvatureSymmetries check_symmetries(const Geometry& g) {
  CurvatureSymmetries s;
  int d = g.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const Poly& r = g.R(i, j, k, l);
          if (r != -g.R(j, i, k, l)) s.antisymmetric_ij = false;
          if (r != -g.R(i, j, l, k)) s.antisymmetric_kl = false;
          if (r != g.R(k, l, i, j)) s.pair_symmetric = false;
          if (!(r + g.R(j, k, i, l) + g.R(k, i, j, l)).is_zero()) s.first_bianchi = false;
        }
  return s;
}

bool curvature_matches_connection(const Geometry& g) {
  if (!g.closed) return false;
  const Form& w = g.connection;
  Form omega = d(w) + w * w;
  // Omega_lk = sum_{i<j} R_ijkl e^i e^j, and curvature() stores entry (k, l) as sum R_ijlk.
  return omega == g.curvature();
}

// ---------------------------------------------------------------- characteristic forms

Form scale_by_half_degree(const Form& f, const Gq& s) {
  Form out(f.dim(), f.size());
  for (const auto& [I, a] : f.comps()) {
    int j = std::popcount(I) / 2;
    Gq factor(1);
    for (int t = 0; t < j; ++t) factor *= s;
    out.add(I, a.times(Poly(factor)));
  }
  return out;
}

CharacteristicForm CharacteristicForm::wedge(const CharacteristicForm& o) const {
  if (norm != o.norm) throw std::invalid_argument("characteristic forms with different normalizations");
  return {form * o.form, norm};
}

Poly CharacteristicForm::top() const { return form.coeff(top_mask(form.dim())); }

std::vector<Rational> a_hat_log_coefficients() {
  return {Rational(-1, 24), Rational(1, 2880), Rational(-1, 181440), Rational(1, 9676800)};
}

CharacteristicForm a_hat(const Form& R, Normalization norm) {
  int n = R.size(), d = R.dim();
  for (const auto& [I, a] : R.comps()) {
    if (std::popcount(I) != 2) throw std::invalid_argument("a_hat: curvature entries must be 2-forms");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j) != -a(j, i)) throw std::invalid_argument("a_hat: curvature matrix is not antisymmetric");
  }
  Form Rs = norm == Normalization::chern_weil ? R.scaled(Gq::I()) : R;
  auto coeffs = a_hat_log_coefficients();
  Form L(d, 1);
  Form R2 = Rs * Rs, power = R2;
  for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(4 * (k + 1)) <= d; ++k) {
    L += power.trace().scaled(Gq(coeffs[k] / 2));
    power = power * R2;
  }
  if (static_cast<int>(4 * (coeffs.size() + 1)) <= d) throw std::invalid_argument("a_hat: dimension beyond series");
  return {form_exp(L), norm};
}

CharacteristicForm a_hat(const Geometry& g, Normalization norm) { return a_hat(g.curvature(), norm); }

Form spin_connection_left(const Geometry& g) {
  int d = g.dim, s = 1 << d;
  Form out(d, s);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Form w = entry(g.connection, k, l);
      if (w.is_zero()) continue;
      out += times_matrix(w, scaled(left_of_product(d, l, k), Gq::frac(1, 4)));
    }
  return out;
}

Form clifford_curvature_left(const Geometry& g) {
  int d = g.dim, s = 1 << d;
  Form out(d, s);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Form e = g.coframe[i] * g.coframe[j];
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const Poly& r = g.R(i, j, k, l);
          if (r.is_zero()) continue;
          Form coef = scalar_wedge(Form::scalar(d, r), e);
          out += times_matrix(coef, scaled(left_of_product(d, l, k), Gq::frac(1, 4)));
        }
    }
  return out;
}

Form kron_form(const Form& a, const MatQ& b) {
  Form out(a.dim(), a.size() * b.rows());
  Matrix<Poly> bp = to_poly_matrix(b);
  for (const auto& [I, m] : a.comps()) out.add(I, kron(m, bp));
  return out;
}

Form kron_form(const MatQ& a, const Form& b) {
  Form out(b.dim(), a.rows() * b.size());
  Matrix<Poly> ap = to_poly_matrix(a);
  for (const auto& [I, m] : b.comps()) out.add(I, kron(ap, m));
  return out;
}

ConnectionData geometric_connection(const Geometry& g, int m, const Form& theta_twist) {
  int s = 1 << g.dim;
  Form tw = zero_or(theta_twist, g.dim, m);
  Form theta = kron_form(tw, MatQ::identity(s)) + kron_form(MatQ::identity(m), spin_connection_left(g));
  return curvature_and_lift(theta);
}

Form twisting_curvature(const Geometry& g, const Elem& p, const Form& theta_twist) {
  if (!p.square()) throw std::invalid_argument("twisting_curvature: projection must be square");
  int m = p.rows(), d = g.dim, s = 1 << d;
  if (!theta_twist.is_zero() && (theta_twist.size() != m || theta_twist.dim() != d))
    throw std::invalid_argument("twisting_curvature: connection shape mismatch");
  ConnectionData tw = curvature_and_lift(zero_or(theta_twist, d, m));
  Form P = Form::function(d, p);
  Form dP = nabla(tw, P);
  Form Tm = P * dP * dP + P * tw.sigma * P;
  Form Pl = kron_form(P, MatQ::identity(s));
  Form cl = kron_form(MatQ::identity(m), clifford_curvature_left(g));
  return kron_form(Tm, MatQ::identity(s)) - Pl * cl * Pl;
}

CharacteristicForm relative_chern(const Geometry& g, const Form& T, Normalization norm, const Elem& support) {
  int d = g.dim;
  if (d % 2) throw std::invalid_argument("relative_chern needs an even-dimensional geometry");
  Form Ts = norm == Normalization::chern_weil ? T.scaled(Gq::I()) : T;
  Form E = form_exp(-Ts);
  if (support.rows() > 0) {
    int s = 1 << d;
    if (support.rows() * s != T.size()) throw std::invalid_argument("relative_chern: support shape mismatch");
    E = kron_form(Form::function(d, support), MatQ::identity(s)) * E;
  }
  Form ch = E.trace().scaled(Gq(Rational(1, 1 << (d / 2))));
  return {ch, norm};
}

// ---------------------------------------------------------------- integer invariants

SnappedValue snap(cd z) {
  SnappedValue s;
  s.value = z.real();
  s.imag = z.imag();
  s.integer = std::lround(z.real());
  s.residual = std::abs(z.real() - static_cast<double>(s.integer)) + std::abs(z.imag());
  return s;
}

ChernNumber chern_number(const Geometry& g, const Elem& p, int level) {
  if (g.dim != 2 || !g.closed) throw std::invalid_argument("chern_number needs a closed 2-dimensional geometry");
  Form P = Form::function(2, p);
  Form dP = d(P);
  Poly f = (P * dP * dP).trace().coeff(top_mask(2));
  ChernNumber c;
  c.exact_integral = integrate_exact(f, g.chart);
  cd q = g.quadrature(level).integrate(f);
  c.snapped = snap(q / cd(0, kTwoPi));
  if (c.snapped.residual > 1e-6)
    throw std::runtime_error("chern_number: projection not smooth enough or grid too coarse (residual " +
                             std::to_string(c.snapped.residual) + ")");
  return c;
}

LocalIndex local_index(const Geometry& g, const Elem& p, int level, const Form& theta_twist) {
  if (!g.closed || g.dim % 2) throw std::invalid_argument("local_index needs a closed even-dimensional geometry");
  Form T = twisting_curvature(g, p, theta_twist);
  CharacteristicForm ch = relative_chern(g, T, Normalization::chern_weil, p);
  Poly f = a_hat(g).wedge(ch).top();
  LocalIndex li;
  li.level = level;
  li.exact_integral = integrate_exact(f, g.chart);
  double scale = std::pow(kTwoPi, g.half_dim());
  li.exact_value = pi_value(li.exact_integral) / scale;
  li.snapped = snap(g.quadrature(level).integrate(f) / scale);
  return li;
}

bool RefinementTrend::decreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i].snapped.residual < levels[i - 1].snapped.residual)) return false;
  return true;
}

std::string RefinementTrend::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& l : levels)
    os << "level=" << l.level << " value=" << l.snapped.value << " integer=" << l.snapped.integer
       << " residual=" << l.snapped.residual << "\n";
  return os.str();
}

RefinementTrend index_refinement(const Geometry& g, const Elem& p, int refine, const Form& theta_twist) {
  RefinementTrend t;
  for (int r = 0; r <= refine; ++r) t.levels.push_back(local_index(g, p, r, theta_twist));
  return t;
}

// ---------------------------------------------------------------- cocycle

CocycleValue character_cocycle_eval(const Geometry& g, const TensorSum& chain, int level, const Form& theta_twist) {
  if (!g.closed || g.dim % 2) throw std::invalid_argument("character_cocycle_eval needs a closed even geometry");
  int d = g.dim, s = 1 << d;
  CocycleValue out;
  if (chain.empty()) return out;
  int m = chain.front().slots.front().rows();
  ConnectionData conn = geometric_connection(g, m, theta_twist);
  CharacteristicForm ahat = a_hat(g);
  Quadrature q = g.quadrature(level);
  double scale = std::pow(kTwoPi, g.half_dim());
  for (const auto& t : chain) {
    int k = static_cast<int>(t.slots.size()) - 1;
    if (k % 2) throw std::invalid_argument("character_cocycle_eval needs even-degree chains");
    std::vector<Form> a;
    for (const auto& b : t.slots) {
      if (b.rows() != m) throw std::invalid_argument("character_cocycle_eval: slot size mismatch");
      a.push_back(kron_form(Form::function(d, b), MatQ::identity(s)));
    }
    Form r = rho(conn, a).scaled(t.coef * Gq(Rational(1, 1 << (d / 2))) * Gq(factorial(k)).inverse());
    CharacteristicForm w{scale_by_half_degree(r, Gq::I()), Normalization::chern_weil};
    Poly f = ahat.wedge(w).top();
    out.exact += pi_value(integrate_exact(f, g.chart)) / scale;
    out.quadrature += q.integrate(f) / scale;
  }
  return out;
}

PairingAssembly assembled_pairing(const Geometry& g, const Elem& p, int max_m, int level) {
  PairingAssembly a;
  int blocks = p.rows();
  for (int n = 0; n <= max_m; ++n) {
    CocycleValue v = character_cocycle_eval(g, chern_cyclic_terms(p, blocks, n), level);
    a.total_exact += v.exact;
    a.total_quadrature += v.quadrature;
    a.by_degree.push_back(v);
  }
  return a;
}

Elem bott_projection(const ChartPtr& sphere) {
  if (sphere->kind != Chart::Kind::sphere) throw std::invalid_argument("bott_projection needs the sphere chart");
  Poly cth = Poly::var(sphere, 0), sth = Poly::var(sphere, 1), cph = Poly::var(sphere, 2), sph = Poly::var(sphere, 3);
  Poly x = sth * cph, y = sth * sph, z = cth;
  Gq half = Gq::frac(1, 2);
  Elem p(2, 2);
  p(0, 0) = (Poly(1) + z).scaled(half);
  p(1, 1) = (Poly(1) - z).scaled(half);
  p(0, 1) = (x - y.scaled(Gq::I())).scaled(half);
  p(1, 0) = (x + y.scaled(Gq::I())).scaled(half);
  return p;
}

Elem conjugate_entries(const Elem& p) {
  Elem q(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) q(i, j) = p(i, j).conj();
  return q;
}

}  // namespace ptk
