#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ptk/matrix.hpp"

namespace ptk {

using Integer = mpz_class;
using Simplex = std::vector<int>;  // sorted vertex labels

// Dense integer matrix.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Integer> a;
  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  static IntMatrix identity(int n);
  Integer& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Integer& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

// U A V = diag(d_0, ..., d_{r-1}, 0, ...), d_i > 0, d_i | d_{i+1}; U, V unimodular.
struct SmithForm {
  IntMatrix U, Uinv, V, Vinv;
  std::vector<Integer> diag;  // nonzero invariant factors
  int rank() const { return static_cast<int>(diag.size()); }
};
SmithForm smith_normal_form(const IntMatrix& A);

// Some integer x with A x = b, if one exists.
std::optional<std::vector<Integer>> integer_solve(const IntMatrix& A, const std::vector<Integer>& b);

// Finite abstract simplicial complex closed under faces; orientation from vertex order.
class Nerve {
 public:
  static Nerve from_simplices(const std::vector<Simplex>& simplices);
  // Boundary of the standard 4-simplex: a 5-vertex 3-sphere.
  static Nerve boundary_of_4_simplex();

  int dim() const { return static_cast<int>(s_.size()) - 1; }
  int vertex_count() const;
  const std::vector<Simplex>& simplices(int k) const;
  int index(const Simplex& s) const;  // -1 if absent
  // Matrix of the coboundary C^k -> C^{k+1}: (df)(v_0..v_{k+1}) = sum_i (-1)^i f(.. ^v_i ..).
  IntMatrix coboundary(int k) const;
  // Apply a vertex permutation; simplices are re-sorted.
  Nerve relabeled(const std::vector<int>& perm) const;

 private:
  std::vector<std::vector<Simplex>> s_;
  std::vector<std::map<Simplex, int>> idx_;
};

std::vector<Integer> coboundary(const Nerve& N, int k, const std::vector<Integer>& f);

// Transition data g_ij (i < j); g_ji = g_ij^{-1} = g_ij^*.
struct UnitaryCochain {
  int n = 1;
  std::map<std::pair<int, int>, MatQ> exact;
  std::map<std::pair<int, int>, MatC> numeric;
  bool is_exact() const { return numeric.empty(); }
  MatC get(int i, int j) const;
  MatQ get_exact(int i, int j) const;
};

struct DDCocycle {
  bool exact = false;
  std::vector<Gq> mu_exact;   // on 2-simplices, when exact
  std::vector<cd> mu;         // on 2-simplices
  std::vector<double> nu;     // arg(mu) / 2 pi in [0, 1)
  std::vector<long> delta;    // on 3-simplices
  bool dmu_is_one = false;    // multiplicative coboundary of mu is 1
  double max_rounding = 0;    // largest distance of d(nu) from the integers
};

// Throws std::domain_error("transition data is not a projective cocycle") if
// some triple product is not scalar.
DDCocycle scalar_check_and_mu(const UnitaryCochain& g, const Nerve& N, double tol = 1e-9);

// Integer cohomology class of a k-cocycle.
struct CohomologyClass {
  int degree = 0;
  std::vector<Integer> torsion_orders;  // invariant factors > 1
  int free_rank = 0;
  std::vector<Integer> torsion_coords;  // residues modulo the orders
  std::vector<Integer> free_coords;
  bool is_zero() const;
  Integer order() const;  // 0 for an element of infinite order
  std::string to_text() const;
};
CohomologyClass cohomology_class(const Nerve& N, int k, const std::vector<Integer>& cocycle);
// H^3 class of delta. Throws std::invalid_argument if delta is not closed.
CohomologyClass h3_class(const Nerve& N, const std::vector<long>& delta);

// Integer 2-cochain c with dc = n delta, if one exists.
std::optional<std::vector<Integer>> torsion_witness(const Nerve& N, const std::vector<long>& delta, long n);

// g_ij -> lambda_ij g_ij with lambda_ij^n = 1 / det g_ij (principal root).
UnitaryCochain lift_from_determinant(const UnitaryCochain& g);
// g_ij -> lambda_ij g_ij.
UnitaryCochain rephased(const UnitaryCochain& g, const std::map<std::pair<int, int>, cd>& lambda);
// Transition data after relabeling the vertices by perm.
UnitaryCochain relabeled(const UnitaryCochain& g, const std::vector<int>& perm);

// Ready-made examples.
MatQ pauli(int k);  // 0: identity, 1: sigma_x, 2: sigma_y, 3: sigma_z
struct CechScenario {
  Nerve nerve;
  UnitaryCochain transitions;
};
// Triangle with g_01 = sigma_x, g_12 = sigma_y, g_20 = sigma_z.
CechScenario pauli_triangle();
// Product triangulation of the 6-vertex RP^2 and a 3-cycle, with g = X^a Z^b
// for the generators a of H^1(RP^2; Z/2) and b of H^1(S^1; Z/2).
CechScenario rp2_times_circle();

std::string to_text(const DDCocycle& c, const Nerve& N);

}  // namespace ptk
