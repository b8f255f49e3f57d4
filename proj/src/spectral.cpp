#include "ptk/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ptk/clifford.hpp"

namespace ptk {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const MatQ& m) {
  EMat e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
  return e;
}

double mu_of(double lambda) { return 1.0 / (lambda * lambda + 1.0); }

// Orthonormal basis (columns) of the range of a Hermitian projection.
EMat range_basis(const MatQ& p) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(p));
  std::vector<int> keep;
  for (int i = 0; i < p.rows(); ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  EMat v(p.rows(), static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) v.col(static_cast<int>(k)) = es.eigenvectors().col(keep[k]);
  return v;
}

MatQ stack(const MatQ& a, const MatQ& b) {
  MatQ s(a.rows() + b.rows(), a.cols());
  s.set_block(0, 0, a);
  s.set_block(a.rows(), 0, b);
  return s;
}

// dim(range P intersect ker X).
int intersection_dim(const MatQ& P, const MatQ& X) {
  int n = P.rows();
  return n - rank(stack(MatQ::identity(n) - P, X));
}

double frobenius(const MatQ& m) {
  double s = 0;
  for (const auto& z : m.data()) s += std::norm(z.to_complex());
  return std::sqrt(s);
}

double frobenius(const EMat& m) { return m.norm(); }

void require_square(const MatQ& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

// ---------------------------------------------------------------- Sobolev scales

SobolevScale SobolevScale::from_spectrum(std::vector<double> eigenvalues) {
  for (auto& x : eigenvalues) x = std::abs(x);
  std::sort(eigenvalues.begin(), eigenvalues.end());
  SobolevScale s;
  for (double a : eigenvalues) {
    if (!s.mu.empty()) {
      double prev = std::sqrt(1.0 / s.mu.back() - 1.0);
      if (std::abs(a - prev) <= 1e-12 * std::max(1.0, a)) {
        ++s.dim.back();
        continue;
      }
    }
    s.mu.push_back(mu_of(a));
    s.dim.push_back(1);
  }
  return s;
}

double SobolevScale::zeta(double d) const {
  double z = 0;
  for (double m : mu) z += std::pow(m, d);
  return z;
}

std::vector<double> circle_dirac_spectrum(int N) {
  std::vector<double> ev;
  for (int n = -N; n <= N; ++n) ev.push_back(n);
  return ev;
}

double sobolev_norm(const SobolevScale& scale, const SobolevVector& v, double s, double p) {
  if (s < 0) throw std::invalid_argument("Sobolev order must be nonnegative");
  if (!(p >= 1)) throw std::invalid_argument("Sobolev exponent must be at least 1");
  if (v.norms.size() != scale.mu.size()) throw std::invalid_argument("vector does not match the scale");
  if (std::isinf(p)) {
    double m = 0;
    for (std::size_t i = 0; i < v.norms.size(); ++i) m = std::max(m, std::pow(scale.mu[i], -s / 2) * v.norms[i]);
    return m;
  }
  // Factor out the largest term so high orders do not overflow.
  std::vector<double> w(v.norms.size());
  double top = 0;
  for (std::size_t i = 0; i < v.norms.size(); ++i) {
    w[i] = std::pow(scale.mu[i], -s / 2) * v.norms[i];
    top = std::max(top, w[i]);
  }
  if (top == 0) return 0;
  double sum = 0;
  for (double x : w) sum += std::pow(x / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double hilbert_norm(const std::vector<double>& eigenvalues, const std::vector<cd>& coords, double s) {
  if (eigenvalues.size() != coords.size()) throw std::invalid_argument("coordinate count mismatch");
  double sum = 0;
  for (std::size_t k = 0; k < coords.size(); ++k)
    sum += std::pow(eigenvalues[k] * eigenvalues[k] + 1.0, s) * std::norm(coords[k]);
  return std::sqrt(sum);
}

SobolevVector group_components(const SobolevScale& scale, const std::vector<double>& eigenvalues,
                               const std::vector<cd>& coords) {
  if (eigenvalues.size() != coords.size()) throw std::invalid_argument("coordinate count mismatch");
  SobolevVector v;
  v.norms.assign(scale.mu.size(), 0.0);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    double m = mu_of(eigenvalues[k]);
    auto it = std::lower_bound(scale.mu.begin(), scale.mu.end(), m, [](double a, double b) { return a > b; });
    std::size_t i = static_cast<std::size_t>(it - scale.mu.begin());
    if (i > 0 && (i == scale.mu.size() || std::abs(scale.mu[i - 1] - m) < std::abs(scale.mu[i] - m))) --i;
    v.norms[i] += std::norm(coords[k]);
  }
  for (auto& x : v.norms) x = std::sqrt(x);
  return v;
}

std::vector<cd> random_coordinates(const std::vector<double>& eigenvalues, double decay, Rng& rng) {
  std::vector<cd> c;
  c.reserve(eigenvalues.size());
  for (double lambda : eigenvalues) {
    // Box-Muller on the documented generator.
    double u1 = 1.0 - rng.unit(), u2 = rng.unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    double damp = std::pow(lambda * lambda + 1.0, -decay / 2);
    c.emplace_back(damp * r * std::cos(a), damp * r * std::sin(a));
  }
  return c;
}

EmbeddingCheck sobolev_embedding_check(const SobolevScale& scale, const SobolevVector& v, double s, double p,
                                       double d) {
  EmbeddingCheck e;
  e.sup_norm = sobolev_norm(scale, v, s, kInfinity);
  e.p_norm = sobolev_norm(scale, v, s, p);
  e.bound = std::pow(scale.zeta(d), 1.0 / p) * sobolev_norm(scale, v, s + 2 * d / p, kInfinity);
  e.lower_slack = (e.p_norm - e.sup_norm) / std::max(1.0, e.p_norm);
  e.upper_slack = (e.bound - e.p_norm) / std::max(1.0, e.bound);
  return e;
}

// ---------------------------------------------------------------- summability

std::string to_string(Summability s) { return s == Summability::summable ? "summable" : "divergent"; }

SummabilityReport spectral_dimension_probe(const SpectrumFamily& family, double d, int N0, int doublings,
                                           double margin) {
  if (N0 < 1 || doublings < 2) throw std::invalid_argument("probe needs N0 >= 1 and at least two doublings");
  SummabilityReport r;
  r.d = d;
  for (int i = 0, N = N0; i <= doublings; ++i, N *= 2) {
    double sum = 0;
    for (double lambda : family(N)) sum += std::pow(mu_of(lambda), d);
    r.truncations.push_back(N);
    r.partial_sums.push_back(sum);
  }
  std::vector<double> inc;
  for (std::size_t i = 1; i < r.partial_sums.size(); ++i) inc.push_back(r.partial_sums[i] - r.partial_sums[i - 1]);
  for (std::size_t i = 1; i < inc.size(); ++i)
    r.increment_ratios.push_back(inc[i - 1] == 0 ? 0.0 : inc[i] / inc[i - 1]);
  if (inc.back() == 0) {
    r.decay_exponent = kInfinity;
  } else {
    r.decay_exponent = -std::log2(r.increment_ratios.back());
  }
  r.verdict = r.decay_exponent > margin ? Summability::summable : Summability::divergent;
  return r;
}

std::string SummabilityReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "summability d=" << d << " verdict=" << to_string(verdict) << " decay_exponent=" << decay_exponent << "\n";
  for (std::size_t i = 0; i < truncations.size(); ++i)
    os << "  N=" << truncations[i] << " partial_sum=" << partial_sums[i] << "\n";
  return os.str();
}

// ---------------------------------------------------------------- continuity criterion

double continuity_constant(const SobolevScale& scale, const std::vector<double>& column_norms, double r) {
  if (column_norms.size() != scale.mu.size()) throw std::invalid_argument("column count mismatch");
  double C = 0;
  for (std::size_t j = 0; j < column_norms.size(); ++j)
    C = std::max(C, column_norms[j] - std::pow(scale.mu[j], -r));
  return C;
}

std::vector<double> shift_column_norms(int N, const SobolevScale& scale, double s) {
  // V_0 = {0}, V_j = {j, -j}; the image of e_n is e_{n+1} if n < N.
  std::vector<double> out(scale.size(), 0.0);
  for (int j = 0; j < scale.size(); ++j) {
    double best = 0;
    for (int n : {j, -j}) {
      if (n + 1 > N) continue;
      best = std::max(best, std::pow(mu_of(n + 1), -s));
    }
    out[j] = best;
  }
  return out;
}

std::vector<double> exponential_column_norms(int N, const SobolevScale& scale, double s) {
  std::vector<double> out(scale.size(), 0.0);
  for (int j = 0; j < scale.size() && j <= N; ++j) out[j] = std::exp(static_cast<double>(j)) * std::pow(scale.mu[j], -s);
  return out;
}

// ---------------------------------------------------------------- finite triples

std::vector<Gq> characteristic_polynomial(const MatQ& a) {
  if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  int n = a.rows();
  std::vector<Gq> c(n + 1);
  c[n] = Gq(1);
  MatQ M(n, n);
  for (int k = 1; k <= n; ++k) {
    M = a * M + MatQ::scalar(n, c[n - k + 1]);
    c[n - k] = -((a * M).trace() * Gq(Rational(1, k)));
  }
  return c;
}

bool is_projection(const MatQ& p) { return p.square() && p * p == p && p.adjoint() == p; }

MatQ projection_onto(const MatQ& columns) {
  int n = columns.rows();
  std::vector<int> keep;
  int r = 0;
  for (int j = 0; j < columns.cols(); ++j) {
    MatQ trial(n, static_cast<int>(keep.size()) + 1);
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (int i = 0; i < n; ++i) trial(i, static_cast<int>(k)) = columns(i, keep[k]);
    for (int i = 0; i < n; ++i) trial(i, static_cast<int>(keep.size())) = columns(i, j);
    int rr = rank(trial);
    if (rr > r) {
      keep.push_back(j);
      r = rr;
    }
  }
  if (keep.empty()) return MatQ(n, n);
  MatQ v(n, static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (int i = 0; i < n; ++i) v(i, static_cast<int>(k)) = columns(i, keep[k]);
  MatQ vs = v.adjoint();
  return v * inverse(vs * v) * vs;
}

SpectralTripleData SpectralTripleData::finite(MatQ D, std::optional<MatQ> gamma, std::vector<MatQ> algebra) {
  if (!D.square()) throw std::invalid_argument("D must be square");
  int n = D.rows();
  if (gamma) require_square(*gamma, n, "grading");
  for (const auto& a : algebra) require_square(a, n, "algebra element");
  SpectralTripleData t;
  t.D = std::move(D);
  t.gamma = std::move(gamma);
  t.support = MatQ::identity(n);
  t.algebra = std::move(algebra);
  return t;
}

int SpectralTripleData::dim() const { return rank(support); }

std::vector<double> SpectralTripleData::spectrum() const {
  EMat v = range_basis(support);
  std::vector<double> ev;
  if (v.cols() == 0) return ev;
  EMat dv = v.adjoint() * to_eigen(D) * v;
  Eigen::SelfAdjointEigenSolver<EMat> es(dv);
  for (int i = 0; i < dv.rows(); ++i) ev.push_back(es.eigenvalues()(i));
  return ev;
}

std::vector<Gq> SpectralTripleData::characteristic_polynomial() const {
  std::vector<Gq> c = ptk::characteristic_polynomial(support * D * support);
  int extra = ambient_dim() - dim();
  for (int i = 0; i < extra; ++i)
    if (!c[i].is_zero()) throw std::logic_error("compressed operator has unexpected characteristic polynomial");
  return std::vector<Gq>(c.begin() + extra, c.end());
}

ContractReport check_contract(const SpectralTripleData& t) {
  ContractReport r;
  int n = t.ambient_dim();
  r.self_adjoint = t.D.adjoint() == t.D && t.support * t.D == t.D && t.D * t.support == t.D;
  r.support_projection = is_projection(t.support);
  r.graded = t.gamma.has_value();
  if (t.gamma) {
    const MatQ& g = *t.gamma;
    r.grading_square = g * g == MatQ::identity(n);
    r.grading_self_adjoint = g.adjoint() == g;
    r.grading_anticommutes = (g * t.D + t.D * g).is_zero() && commutator(g, t.support).is_zero();
    for (const auto& a : t.algebra)
      if (!commutator(g, a).is_zero()) r.grading_commutes_algebra = false;
  }
  for (const auto& a : t.algebra) r.max_commutator_norm = std::max(r.max_commutator_norm, frobenius(commutator(t.D, a)));
  return r;
}

SpectralTripleData morita_lift(const SpectralTripleData& t, const MatQ& p, int m) {
  int n = t.ambient_dim();
  if (m < 1) throw std::invalid_argument("amplification must be at least 1");
  require_square(p, m * n, "projection");
  if (!is_projection(p)) throw std::invalid_argument("morita_lift: input is not a projection");
  MatQ one_m = MatQ::identity(m);
  MatQ S = kron(one_m, t.support);
  if (p * S != p) throw std::invalid_argument("morita_lift: projection leaves the Hilbert space");
  SpectralTripleData out;
  out.support = p;
  out.D = p * kron(one_m, t.D) * p;
  if (t.gamma) {
    MatQ g = kron(one_m, *t.gamma);
    if (!commutator(g, p).is_zero()) throw std::invalid_argument("morita_lift: projection is not even");
    out.gamma = g;
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      MatQ e(m, m);
      e(a, b) = Gq(1);
      for (const auto& x : t.algebra) {
        MatQ y = p * kron(e, x) * p;
        if (!y.is_zero()) out.algebra.push_back(std::move(y));
      }
    }
  return out;
}

KernelData graded_kernels(const SpectralTripleData& t) {
  int n = t.ambient_dim();
  MatQ X = t.support * t.D;
  KernelData k;
  if (!t.gamma) {
    k.ker_plus = intersection_dim(t.support, X);
    return k;
  }
  Gq half = Gq::frac(1, 2);
  MatQ one = MatQ::identity(n);
  MatQ Pp = scaled(t.support * (one + *t.gamma), half);
  MatQ Pm = scaled(t.support * (one - *t.gamma), half);
  k.ker_plus = intersection_dim(Pp, X);
  k.ker_minus = intersection_dim(Pm, X);
  return k;
}

int index_pairing(const SpectralTripleData& t, const MatQ& p, int m) {
  return graded_kernels(morita_lift(t, p, m)).index();
}

double mckean_singer(const SpectralTripleData& t, double time) {
  EMat v = range_basis(t.support);
  if (v.cols() == 0) return 0;
  EMat dv = v.adjoint() * to_eigen(t.D) * v;
  EMat gv = t.gamma ? EMat(v.adjoint() * to_eigen(*t.gamma) * v) : EMat::Identity(v.cols(), v.cols());
  Eigen::SelfAdjointEigenSolver<EMat> es(dv);
  double s = 0;
  for (int i = 0; i < dv.rows(); ++i) {
    auto w = es.eigenvectors().col(i);
    double lambda = es.eigenvalues()(i);
    s += (w.adjoint() * gv * w)(0, 0).real() * std::exp(-time * lambda * lambda);
  }
  return s;
}

FunctorialityReport pairing_functoriality_check(const SpectralTripleData& t, const MatQ& p, int m, const MatQ& q,
                                                int k) {
  SpectralTripleData lifted = morita_lift(t, p, m);
  FunctorialityReport r;
  r.lifted = index_pairing(lifted, q, k);
  r.pushed = index_pairing(t, q, k * m);
  return r;
}

DiagonalTriple random_diagonal_triple(int summands, int max_block, Rng& rng) {
  DiagonalTriple out;
  int P = 0, M = 0;
  while (P + M == 0) {
    out.plus.assign(summands, 0);
    out.minus.assign(summands, 0);
    P = M = 0;
    for (int j = 0; j < summands; ++j) {
      out.plus[j] = static_cast<int>(rng.uniform(0, max_block));
      out.minus[j] = static_cast<int>(rng.uniform(0, max_block));
      P += out.plus[j];
      M += out.minus[j];
    }
  }
  int n = P + M;
  MatQ gamma(n, n);
  for (int i = 0; i < n; ++i) gamma(i, i) = Gq(i < P ? 1 : -1);
  int op = 0, om = P;
  for (int j = 0; j < summands; ++j) {
    MatQ u(n, n);
    for (int i = 0; i < out.plus[j]; ++i) u(op + i, op + i) = Gq(1);
    for (int i = 0; i < out.minus[j]; ++i) u(om + i, om + i) = Gq(1);
    op += out.plus[j];
    om += out.minus[j];
    out.units.push_back(std::move(u));
  }
  MatQ D(n, n);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < P; ++j)
      if (rng.uniform(0, 2) != 0) {
        Gq z = rng.small_gq(2, 2);
        D(P + i, j) = z;
        D(j, P + i) = z.conj();
      }
  out.triple = SpectralTripleData::finite(std::move(D), std::move(gamma), out.units);
  return out;
}

MatQ diagonal_element(const std::vector<MatQ>& units, const std::vector<MatQ>& parts) {
  if (units.size() != parts.size() || units.empty()) throw std::invalid_argument("diagonal_element: size mismatch");
  MatQ out = kron(parts[0], units[0]);
  for (std::size_t j = 1; j < units.size(); ++j) out += kron(parts[j], units[j]);
  return out;
}

MatQ random_projection_below(const MatQ& bound, int max_rank, Rng& rng) {
  int n = bound.rows();
  int r = static_cast<int>(rng.uniform(0, max_rank));
  MatQ cols(n, r);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < n; ++i) cols(i, c) = rng.small_gq(2, 2);
  return projection_onto(bound * cols);
}

std::optional<MatQ> inner_fluctuation_to(const SpectralTripleData& t, const MatQ& target) {
  int n = t.ambient_dim();
  require_square(target, n, "fluctuation target");
  std::vector<MatQ> forms;
  for (const auto& a : t.algebra)
    for (const auto& b : t.algebra) {
      MatQ w = a * commutator(t.D, b);
      if (!w.is_zero()) forms.push_back(std::move(w));
    }
  MatQ diff = target - t.D;
  if (diff.is_zero()) return target;
  if (forms.empty()) return std::nullopt;
  MatQ A(n * n, static_cast<int>(forms.size())), rhs(n * n, 1);
  for (std::size_t f = 0; f < forms.size(); ++f)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i * n + j, static_cast<int>(f)) = forms[f](i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(i * n + j, 0) = diff(i, j);
  MatQ c;
  try {
    c = solve(A, rhs);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  MatQ out = t.D;
  for (std::size_t f = 0; f < forms.size(); ++f) out += scaled(forms[f], c(static_cast<int>(f), 0));
  return out;
}

// ---------------------------------------------------------------- Fourier torus model

FourierTorusModel::FourierTorusModel(int N) : N_(N) {
  if (N < 0) throw std::invalid_argument("truncation must be nonnegative");
  for (int i = 1; i <= 2; ++i) R_.push_back(right_matrix(CliffordElement::gen(2, i)));
  gamma_ = right_matrix(chirality(2));
}

MatQ FourierTorusModel::block(int k1, int k2) const {
  return scaled(scaled(R_[0], Gq(k1)) + scaled(R_[1], Gq(k2)), Gq::I());
}

std::vector<double> FourierTorusModel::spectrum() const {
  std::vector<double> ev;
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(block(k1, k2)), Eigen::EigenvaluesOnly);
      for (int i = 0; i < 4; ++i) ev.push_back(es.eigenvalues()(i));
    }
  std::sort(ev.begin(), ev.end());
  return ev;
}

double FourierTorusModel::mckean_singer(double t) const {
  EMat g = to_eigen(gamma_);
  double s = 0;
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(block(k1, k2)));
      for (int i = 0; i < 4; ++i) {
        auto w = es.eigenvectors().col(i);
        double lambda = es.eigenvalues()(i);
        s += (w.adjoint() * g * w)(0, 0).real() * std::exp(-t * lambda * lambda);
      }
    }
  return s;
}

int FourierTorusModel::index(double tol) const {
  EMat g = to_eigen(gamma_);
  double s = 0;
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(block(k1, k2)));
      for (int i = 0; i < 4; ++i)
        if (std::abs(es.eigenvalues()(i)) < tol) {
          auto w = es.eigenvectors().col(i);
          s += (w.adjoint() * g * w)(0, 0).real();
        }
    }
  return static_cast<int>(std::lround(s));
}

double FourierTorusModel::commutator_norm(int j1, int j2) const {
  double best = 0;
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      int l1 = k1 + j1, l2 = k2 + j2;
      if (std::abs(l1) > N_ || std::abs(l2) > N_) continue;
      EMat c = to_eigen(block(l1, l2) - block(k1, k2));
      Eigen::JacobiSVD<EMat> svd(c);
      best = std::max(best, svd.singularValues()(0));
    }
  return best;
}

double FourierTorusModel::grading_residual() const {
  EMat g = to_eigen(gamma_);
  EMat one = EMat::Identity(4, 4);
  double r = std::max(frobenius(EMat(g * g - one)), frobenius(EMat(g.adjoint() - g)));
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      EMat d = to_eigen(block(k1, k2));
      r = std::max(r, frobenius(EMat(g * d + d * g)));
    }
  return r;
}

}  // namespace ptk
