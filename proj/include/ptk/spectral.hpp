#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ptk/matrix.hpp"
#include "ptk/rng.hpp"

namespace ptk {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- Sobolev scales

// Eigenspaces V_1, V_2, ... of (D^2 + 1)^{-1} ordered by decreasing eigenvalue mu_i.
struct SobolevScale {
  std::vector<double> mu;
  std::vector<int> dim;

  // Groups eigenvalues of D with equal |lambda| (relative tolerance 1e-12).
  static SobolevScale from_spectrum(std::vector<double> eigenvalues);
  int size() const { return static_cast<int>(mu.size()); }
  // sum_j mu_j^d over distinct eigenspaces.
  double zeta(double d) const;
};

// D = -i d/dtheta on the modes e^{in theta}, |n| <= N: eigenvalue n, once each.
std::vector<double> circle_dirac_spectrum(int N);

// Component norms ||v_i|| per eigenspace.
struct SobolevVector {
  std::vector<double> norms;
};

// ||v||_{s,p}; p = kInfinity selects the sup norm. Requires s >= 0 and p >= 1.
double sobolev_norm(const SobolevScale& scale, const SobolevVector& v, double s, double p);

// Hilbert-scale norm computed from raw coordinates in an eigenbasis of D:
// sqrt(sum_k (lambda_k^2 + 1)^s |c_k|^2).
double hilbert_norm(const std::vector<double>& eigenvalues, const std::vector<cd>& coords, double s);

// Groups raw coordinates (aligned with `eigenvalues`) into eigenspace norms of `scale`.
SobolevVector group_components(const SobolevScale& scale, const std::vector<double>& eigenvalues,
                               const std::vector<cd>& coords);

// Complex Gaussian coordinates damped by (lambda^2 + 1)^{-decay/2}.
std::vector<cd> random_coordinates(const std::vector<double>& eigenvalues, double decay, Rng& rng);

// ||v||_{s,inf} <= ||v||_{s,p} <= (sum_j mu_j^d)^{1/p} ||v||_{s+2d/p,inf}.
struct EmbeddingCheck {
  double sup_norm = 0, p_norm = 0, bound = 0;
  // Relative slacks (right minus left, divided by max(1, right)); >= 0 when the inequality holds.
  double lower_slack = 0, upper_slack = 0;
  double min_slack() const { return std::min(lower_slack, upper_slack); }
};
EmbeddingCheck sobolev_embedding_check(const SobolevScale& scale, const SobolevVector& v, double s, double p,
                                       double d);

// ---------------------------------------------------------------- summability

// Eigenvalues of D (with multiplicity) on the truncation of size N.
using SpectrumFamily = std::function<std::vector<double>(int)>;

enum class Summability { summable, divergent };
std::string to_string(Summability s);

// Partial sums of tr (D^2 + 1)^{-d} over doubling truncations. If the tail increments
// decay like N^{-a}, consecutive increments have ratio 2^{-a}; the verdict is summable
// when the fitted exponent a exceeds `margin`. This is a heuristic: exponents in
// (0, margin] are reported as divergent.
struct SummabilityReport {
  double d = 0;
  std::vector<int> truncations;
  std::vector<double> partial_sums;
  std::vector<double> increment_ratios;
  double decay_exponent = 0;
  Summability verdict = Summability::summable;
  std::string to_text() const;
};
SummabilityReport spectral_dimension_probe(const SpectrumFamily& family, double d, int N0 = 50,
                                           int doublings = 6, double margin = 0.05);

// ---------------------------------------------------------------- continuity criterion

// Column data of an operator in the eigenspace decomposition: for each j, the norm of
// sum_i mu_i^{-s} t_ij as a map V_j -> H.
using ColumnNorms = std::function<std::vector<double>(const SobolevScale&, double s)>;

// Smallest C with ||sum_i mu_i^{-s} t_ij|| <= C + mu_j^{-r} for all j of the truncation.
double continuity_constant(const SobolevScale& scale, const std::vector<double>& column_norms, double r);

// Multiplication by e^{i theta} on the circle truncation (shift n -> n + 1, top mode dropped).
std::vector<double> shift_column_norms(int N, const SobolevScale& scale, double s);
// Diagonal operator e^{|n|} on the circle truncation (maps no W^s continuously).
std::vector<double> exponential_column_norms(int N, const SobolevScale& scale, double s);

// ---------------------------------------------------------------- finite triples

// A finite spectral triple realized inside an ambient space C^N: the Hilbert space is
// the range of `support`, D and gamma act on the ambient space and commute with support,
// and `algebra` spans the represented algebra (each element commutes with support).
struct SpectralTripleData {
  MatQ D;
  std::optional<MatQ> gamma;
  MatQ support;
  std::vector<MatQ> algebra;

  static SpectralTripleData finite(MatQ D, std::optional<MatQ> gamma, std::vector<MatQ> algebra);
  int ambient_dim() const { return D.rows(); }
  int dim() const;
  // Eigenvalues of D on the Hilbert space, ascending (numeric).
  std::vector<double> spectrum() const;
  SobolevScale scale() const { return SobolevScale::from_spectrum(spectrum()); }
  // Characteristic polynomial of D on the Hilbert space, exact, coefficients low to high.
  std::vector<Gq> characteristic_polynomial() const;
};

std::vector<Gq> characteristic_polynomial(const MatQ& a);
bool is_projection(const MatQ& p);
// Orthogonal projection onto the column span: V (V* V)^{-1} V* after removing dependent columns.
MatQ projection_onto(const MatQ& columns);

struct ContractReport {
  bool self_adjoint = false;
  bool support_projection = false;
  bool graded = false;
  bool grading_square = true, grading_self_adjoint = true, grading_anticommutes = true,
       grading_commutes_algebra = true;
  double max_commutator_norm = 0;  // max Frobenius norm of [D, a] over the algebra list
  bool ok() const {
    return self_adjoint && support_projection && grading_square && grading_self_adjoint && grading_anticommutes &&
           grading_commutes_algebra;
  }
};
ContractReport check_contract(const SpectralTripleData& t);

// D^E = p (1_m (x) D) p on p H^m, for a projection p in M_m(A) given as an (mN) x (mN)
// matrix with block (a, b) equal to the representation of p_ab. The grading is 1_m (x) gamma
// and the algebra is the corner p M_m(A) p.
SpectralTripleData morita_lift(const SpectralTripleData& t, const MatQ& p, int m);

struct KernelData {
  int ker_plus = 0, ker_minus = 0;
  int index() const { return ker_plus - ker_minus; }
};
// dim ker D_+ and dim ker D_- on the Hilbert space, by exact rank computations.
KernelData graded_kernels(const SpectralTripleData& t);
// <p, t> = ind(D^E) for p in M_m(A).
int index_pairing(const SpectralTripleData& t, const MatQ& p, int m);
// str(exp(-t D^2)) on the Hilbert space (numeric).
double mckean_singer(const SpectralTripleData& t, double time);

// Commuting square: <push(q), t> = <q, t^E> for E = p A^m and q in M_k(p M_m(A) p).
struct FunctorialityReport {
  int pushed = 0;  // <push(q), t>
  int lifted = 0;  // <q, t^E>
  bool ok() const { return pushed == lifted; }
};
FunctorialityReport pairing_functoriality_check(const SpectralTripleData& t, const MatQ& p, int m, const MatQ& q,
                                                int k);

// Algebra C^r acting diagonally on a graded space: summand j acts by the identity on a
// block of dimension plus[j] in H_+ and minus[j] in H_-. D is odd with a random
// rational off-diagonal part.
struct DiagonalTriple {
  SpectralTripleData triple;
  std::vector<MatQ> units;  // representation of the minimal projections e_j
  std::vector<int> plus, minus;
};
DiagonalTriple random_diagonal_triple(int summands, int max_block, Rng& rng);
// sum_j parts[j] (x) units[j]: an element of M_m(C^r) represented on H^m.
MatQ diagonal_element(const std::vector<MatQ>& units, const std::vector<MatQ>& parts);
// Random projection in M_m(C) spanned by up to `max_rank` random vectors in the range of `bound`.
MatQ random_projection_below(const MatQ& bound, int max_rank, Rng& rng);

// Inner fluctuation: coefficients with D + sum_i a_i [D, b_i] = target, searching over
// a_i, b_i among the algebra list. Returns the fluctuated operator if one exists.
std::optional<MatQ> inner_fluctuation_to(const SpectralTripleData& t, const MatQ& target);

// ---------------------------------------------------------------- Fourier torus model

// (d - d*)(-1)^deg on C^infty(T^2, Lambda^* C^2), truncated to Fourier modes
// k in [-N, N]^2. On the mode e^{ik.x} it acts by i(k_1 c_R(e_1) + k_2 c_R(e_2)); the
// grading is the right chirality c_R(omega).
class FourierTorusModel {
 public:
  explicit FourierTorusModel(int N);
  int truncation() const { return N_; }
  const MatQ& symbol(int i) const { return R_.at(i - 1); }  // c_R(e_i) on Lambda^*
  const MatQ& grading() const { return gamma_; }
  MatQ block(int k1, int k2) const;  // D on the mode (k1, k2)
  std::vector<double> spectrum() const;
  double mckean_singer(double t) const;
  // Kernel count of D_+ minus D_- with eigenvalue tolerance.
  int index(double tol = 1e-9) const;
  // Largest |[D, e^{i j.x}]| over the truncation (numeric operator norm).
  double commutator_norm(int j1, int j2) const;
  // Max residual of gamma^2 = 1, gamma* = gamma, gamma D = -D gamma over all blocks.
  double grading_residual() const;

 private:
  int N_;
  std::vector<MatQ> R_;
  MatQ gamma_;
};

}  // namespace ptk
