#pragma once

#include <string>
#include <vector>

#include "ptk/chkr.hpp"
#include "ptk/cyclic.hpp"
#include "ptk/forms.hpp"

namespace ptk {

// Node list and weights on a chart's coordinate domain.
struct Quadrature {
  ChartPtr chart;
  std::vector<std::vector<double>> nodes;  // chart coordinates
  std::vector<double> weights;
  cd integrate(const Poly& f) const;
};

// Gauss-Legendre rule on [a, b] (Golub-Welsch).
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

// Closed geometry with an orthonormal coframe e^1..e^d, its Levi-Civita connection
// matrix omega (nabla e_l = sum_k omega_kl e_k), and Riemann components
// R_ijkl = <R(e_i, e_j) e_k, e_l>, i.e.
// Omega_lk = d omega_lk + sum_j omega_lj ^ omega_jk = sum_{i<j} R_ijkl e^i ^ e^j.
// The round sphere has R_1212 = -1 in this convention.
struct Geometry {
  std::string name;
  ChartPtr chart;
  int dim = 0;
  std::vector<Form> coframe;  // scalar 1-forms
  Form connection;            // d x d matrix of 1-forms (zero for formal geometries)
  std::vector<Poly> riemann;  // R_ijkl at index ((i d + j) d + k) d + l, 0-based
  Poly volume;                // coefficient of dx_1 ^ ... ^ dx_d in e^1 ^ ... ^ e^d
  bool closed = true;         // false for formal geometries (no integration)

  const Poly& R(int i, int j, int k, int l) const { return riemann[((i * dim + j) * dim + k) * dim + l]; }
  // Curvature matrix of 2-forms assembled from R_ijkl and the coframe.
  Form curvature() const;
  // Resolution level r: sphere uses 4 + r Gauss-Legendre nodes in theta and a
  // 2(4 + r) + 8 point trapezoid in phi; the torus uses a (8 + 4 r)^2 trapezoid.
  Quadrature quadrature(int level) const;
  int half_dim() const { return dim / 2; }
};

Geometry sphere2();
Geometry torus2();
// Formal 4-dimensional geometry on a polynomial chart with coframe dx_i and the given
// constant curvature tensor (no connection, no integration).
Geometry formal4(const std::vector<Rational>& R);
// Kulkarni-Nomizu product h o k of symmetric matrices: an algebraic curvature tensor.
std::vector<Rational> kulkarni_nomizu(const std::vector<std::vector<Rational>>& h,
                                      const std::vector<std::vector<Rational>>& k);

struct CurvatureSymmetries {
  bool antisymmetric_ij = true, antisymmetric_kl = true, pair_symmetric = true, first_bianchi = true;
  bool ok() const { return antisymmetric_ij && antisymmetric_kl && pair_symmetric && first_bianchi; }
};
CurvatureSymmetries check_symmetries(const Geometry& g);
// Omega from the connection equals the R_ijkl assembly (exact); false for formal geometries.
bool curvature_matches_connection(const Geometry& g);

// Each 2-form degree carries a fixed factor: 1 (verbatim) or i/(2 pi) (Chern-Weil).
enum class Normalization { verbatim, chern_weil };

// Scalar form of mixed even degree. Under chern_weil the factor i^j is applied to the
// degree-2j part exactly and (2 pi)^{-j} is applied when integrating.
struct CharacteristicForm {
  Form form;
  Normalization norm = Normalization::verbatim;
  CharacteristicForm wedge(const CharacteristicForm& o) const;
  Poly top() const;
};

// Degree-2j part of f multiplied by s^j.
Form scale_by_half_degree(const Form& f, const Gq& s);

// det^{1/2}(R/2 / sinh(R/2)) = exp((1/2) sum_k a_k tr R^{2k}), with log(x/2 / sinh(x/2))
// = sum_k a_k x^{2k}, truncated by form degree. R is an antisymmetric matrix of 2-forms.
CharacteristicForm a_hat(const Form& R, Normalization norm = Normalization::chern_weil);
CharacteristicForm a_hat(const Geometry& g, Normalization norm = Normalization::chern_weil);
// Coefficients a_1..a_4 of the series above.
std::vector<Rational> a_hat_log_coefficients();

// Spinor lift of the Levi-Civita connection acting on Lambda^* = Cl_d by left
// multiplication: (1/4) sum omega_kl c_L(e_l e_k).
Form spin_connection_left(const Geometry& g);
// c_L(R) = (1/4) sum_{i<j} R_ijkl e^i ^ e^j c_L(e_l) c_L(e_k); with the convention
// above this is -(curvature of spin_connection_left).
Form clifford_curvature_left(const Geometry& g);

// Kronecker products of a matrix of forms with a constant matrix.
Form kron_form(const Form& a, const MatQ& b);
Form kron_form(const MatQ& a, const Form& b);

// Geometric connection on C^m (x) Lambda^*: theta_twist (x) 1 + 1 (x) spin_connection_left.
// theta_twist may be an empty Form() for the trivial connection.
ConnectionData geometric_connection(const Geometry& g, int m, const Form& theta_twist = Form());

// T = p(nabla p)(nabla p) + p sigma_twist p - p c_L(R) p on C^m (x) Lambda^*, with
// nabla p = dp + [theta_twist, p] and sigma_twist the traceless curvature of theta_twist.
Form twisting_curvature(const Geometry& g, const Elem& p, const Form& theta_twist = Form());

// 2^{-n} tr(P exp(-T)), n = dim / 2, the trace running over C^m (x) Lambda^*, with
// P = support (x) 1 the projection onto H^E (an empty support means the identity).
CharacteristicForm relative_chern(const Geometry& g, const Form& T, Normalization norm = Normalization::chern_weil,
                                  const Elem& support = Elem());

struct SnappedValue {
  double value = 0;
  double imag = 0;
  long integer = 0;
  double residual = 0;  // |value - integer| + |imag|
};
SnappedValue snap(cd z);

// (1/2 pi i) int tr(p dp dp) by quadrature; throws std::runtime_error when the
// residual exceeds 1e-6.
struct ChernNumber {
  SnappedValue snapped;
  PiSeries exact_integral;  // int tr(p dp dp)
};
ChernNumber chern_number(const Geometry& g, const Elem& p, int level = 8);

// ind = int A-hat(M) 2^{-n} tr exp(-T) under the Chern-Weil normalization.
struct LocalIndex {
  SnappedValue snapped;
  PiSeries exact_integral;  // exact integral of the top coefficient, before (2 pi)^{-n}
  cd exact_value;           // exact_integral / (2 pi)^n
  int level = 0;
};
LocalIndex local_index(const Geometry& g, const Elem& p, int level = 0, const Form& theta_twist = Form());

struct RefinementTrend {
  std::vector<LocalIndex> levels;
  bool decreasing() const;
  std::string to_text() const;
};
RefinementTrend index_refinement(const Geometry& g, const Elem& p, int refine, const Form& theta_twist = Form());

// ch_lambda^{2m}(b_0..b_{2m}) = (1/(2^n (2m)!)) int A-hat(M) rho_{2m}(b_0 (x) 1, ..., b_{2m} (x) 1)
// with the geometric connection and the Chern-Weil weight of each 2-form degree.
struct CocycleValue {
  cd quadrature;
  cd exact;
};
CocycleValue character_cocycle_eval(const Geometry& g, const TensorSum& chain, int level = 8,
                                    const Form& theta_twist = Form());

// sum_{m <= max_m} <ch^lambda_{2m}(p), ch_lambda^{2m}> for p in M_blocks(functions).
struct PairingAssembly {
  std::vector<CocycleValue> by_degree;
  cd total_quadrature;
  cd total_exact;
};
PairingAssembly assembled_pairing(const Geometry& g, const Elem& p, int max_m, int level = 8);

// (1 + x.sigma)/2 with x = (sin th cos ph, sin th sin ph, cos th) on the sphere chart.
Elem bott_projection(const ChartPtr& sphere);
Elem conjugate_entries(const Elem& p);

}  // namespace ptk
