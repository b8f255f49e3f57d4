#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptk/cyclic.hpp"
#include "ptk/forms.hpp"

namespace ptk {

// Fibonacci numbers with F(1) = F(2) = 1.
std::uint64_t fibonacci(int n);

// psi_k(a_1..a_k) as the sum over ordered partitions of 1..k into blocks of
// size one (nabla a_i) and two (a_i sigma a_{i+1}).
struct PsiExpansion {
  int k = 0;
  std::vector<Form> terms;
  Form sum;
};
PsiExpansion psi(const ConnectionData& conn, const std::vector<Form>& a);
// Same sum via psi_k = (nabla a_1) psi_{k-1}(a_2..) + a_1 sigma a_2 psi_{k-2}(a_3..).
Form psi_recursive(const ConnectionData& conn, const std::vector<Form>& a);

// Degree-0 matrix form on the connection's chart.
Form as_form(const ConnectionData& conn, const Elem& a);

// rho_k(a_0..a_k) = tr(a_0 psi_k(a_1..a_k)), a scalar k-form.
Form rho(const ConnectionData& conn, const std::vector<Form>& a);
Form rho(const ConnectionData& conn, const TensorSum& t);
Form rho(const ConnectionData& conn, const Chain& c);

// (-1)^{k-1} rho_k(a_0..a_k) + rho_k(a_k, a_0..a_{k-1}) - d tr(a_0 psi_{k-1}(a_1..a_{k-1}) a_k).
Form cyclic_defect(const ConnectionData& conn, const std::vector<Form>& a);

struct IdentityCheck {
  bool holds = false;
  Form defect;
};
// (-1)^{k-1} a_0 psi_k(a_1..a_k) + psi_k(a_0..a_{k-1}) a_k - nabla(a_0 psi_{k-1}(a_1..a_{k-1}) a_k).
IdentityCheck verify_induction_identity(const ConnectionData& conn, const std::vector<Form>& a);

// Integral over the standard k-simplex of prod s_i^{m_i}: prod m_i! / (k + sum m_i)!.
Rational simplex_moment(const std::vector<int>& m);

// int_{simplex} tr(a_0 e^{-s_0 sigma} nabla a_1 e^{-s_1 sigma} ... nabla a_k e^{-s_k sigma}) ds,
// with the exponentials expanded and truncated by form degree.
Form jlo_chkr(const ConnectionData& conn, const std::vector<Form>& a);
Form jlo_chkr(const ConnectionData& conn, const TensorSum& t);

// Connection I_blocks (x) theta acting blockwise on M_blocks(M_m(functions)).
ConnectionData amplify(const ConnectionData& conn, int blocks);

// c_n tr(p psi_2(p, p)^n) with the amplified connection.
Form rho_chern_closed_form(const ConnectionData& conn, const Elem& p, int blocks, int n);

// Sum over n with 2n <= d of the map applied to ch^lambda_{2n}(p).
Form rho_of_chern(const ConnectionData& conn, const Elem& p, int blocks);
Form jlo_of_chern(const ConnectionData& conn, const Elem& p, int blocks);

// Coefficient of dx_1...dx_d of a scalar form.
Poly top_coefficient(const Form& f);
// Trapezoid rule on an n^d grid of a torus chart.
cd integrate_top_trapezoid(const Form& f, const ChartPtr& torus, int n);

struct ChkrComparison {
  int degree = 0;
  PiSeries jlo_exact;  // int [JLO(ch(p))]_d
  PiSeries rho_exact;  // (1/d!) int [rho(ch(p))]_d
  cd jlo_numeric;
  cd rho_numeric;
  bool exact_agree = false;
  double numeric_difference = 0;
  std::string to_text() const;
};
// Compares the top-degree integrals of both characters of p over a torus
// chart. Throws std::invalid_argument for a twist declared non-torsion.
ChkrComparison compare_chkr_rho(const ConnectionData& conn, const Elem& p, int blocks, const ChartPtr& torus,
                                int grid = 64, bool torsion_twist = true);

}  // namespace ptk
