#pragma once

#include "ptk/cyclic.hpp"
#include "ptk/forms.hpp"
#include "ptk/rng.hpp"

namespace ptk {

// Seeded generators for random exact test data.
Poly random_poly(const ChartPtr& chart, int degree, Rng& rng, int max_terms = 4);
Matrix<Poly> random_poly_matrix(const ChartPtr& chart, int m, int degree, Rng& rng, int max_terms = 3);
Form random_function(const ChartPtr& chart, int m, int degree, Rng& rng);
// Homogeneous form of the given degree with random components.
Form random_form(const ChartPtr& chart, int m, int form_degree, int degree, Rng& rng);
Form random_connection(const ChartPtr& chart, int m, int degree, Rng& rng);

// Rational unitary via the Cayley transform of a random rational Hermitian matrix.
MatQ random_rational_unitary(int n, Rng& rng);

// cos and sin of sum_i k_i t_i as trigonometric polynomials on a torus chart.
std::pair<Poly, Poly> trig_of_combination(const ChartPtr& chart, const std::vector<int>& k);

// Exact Hermitian idempotent of size s (s >= 2) on a torus chart, built from
// (1 + n.sigma)/2 with n a trigonometric unit vector, padded with a random
// constant diagonal projection and conjugated by a rational unitary.
Matrix<Poly> random_trig_projection(const ChartPtr& chart, int s, Rng& rng);

Matrix<Poly> to_poly_matrix(const MatQ& m);

// m x m matrix with the given number of nonzero entries (positions may repeat).
Matrix<Poly> random_sparse_matrix(const ChartPtr& chart, int m, int degree, int nonzeros, Rng& rng, int max_terms = 2);
// Sum of `terms` elementary tensors of degree k with sparse entries.
TensorSum random_tensors(const ChartPtr& chart, int m, int k, int terms, Rng& rng, int degree = 1);

}  // namespace ptk
