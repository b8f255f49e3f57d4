#include "ptk/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "ptk/algebroid.hpp"
#include "ptk/cech.hpp"
#include "ptk/chkr.hpp"
#include "ptk/cyclic.hpp"
#include "ptk/geom.hpp"
#include "ptk/random.hpp"
#include "ptk/spectral.hpp"

namespace ptk {

// ---------------------------------------------------------------- plumbing

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string fmt_int(long x) { return std::to_string(x); }
std::string fmt_bool(bool b) { return b ? "true" : "false"; }
std::string fmt_complex(cd z) { return fmt_real(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_real(std::abs(z.imag())) + "i"; }

void CheckResult::expect(bool ok, const std::string& what) {
  ++assertions;
  if (!ok && failures.size() < 32) failures.push_back(what);
}

void CheckResult::set(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"induction-identity", "chkr", "chkr: induction identity for psi_k (d o tr = tr o nabla)", 1,
       "defect of the induction identity vanishes exactly"},
      {"psi-fibonacci", "chkr", "chkr: partition recursion for psi_k", 2,
       "psi_k term counts are Fibonacci numbers; recursion equals partition enumeration"},
      {"rho-cocycle", "chkr", "chkr: rho_k is a cyclic cocycle; rho of the Chern character", 3,
       "rho o b = 0, cyclic defect identity, rho(ch(p)) closed and equal to c_m tr(p psi_2(p,p)^m)"},
      {"bB-relations", "cyclic", "cyclic: Hochschild b and Connes B", 4, "b^2 = 0, B^2 = 0, bB + Bb = 0"},
      {"jlo-rho", "chkr", "chkr: JLO-type character versus rho on the torus", 5,
       "top-degree integrals over T^2 agree exactly (flat) and to 1e-8 (curved)"},
      {"bianchi-twisted", "forms", "forms: Bianchi identity and the twisted de Rham complex", 6,
       "nabla sigma = 0, tr o nabla = d o tr, d_c^2 = 0, exp(beta) intertwiner"},
      {"dd-class", "cech", "cech: Dixmier-Douady class of projective transition data", 7,
       "d mu = 1, delta integral and closed, rephasing invariance, Pauli triangle, torsion witness, H^3(S^3)"},
      {"varrho", "algebroid", "algebroid: varrho from cyclic chains to Chevalley-Eilenberg forms", 8,
       "varrho o b = 0, varrho o B = d_CE o varrho (normalized), vanishing on commuting inner derivations"},
      {"sobolev", "spectral", "spectral: Sobolev scale estimate and spectral dimension", 9,
       "embedding inequality chain on the circle truncation; p-series verdicts"},
      {"morita", "spectral", "spectral: Morita lifts and index pairing", 10,
       "p = 1 reflexive, finite index 1, functoriality square, inner fluctuation asymmetry"},
      {"index", "geom", "geom: local index formula on S^2 and McKean-Singer on T^2", 11,
       "local indices snap to integers with decreasing residuals; Chern number of Bott; supertrace"},
      {"pairing", "geom", "geom: assembled pairing of the Chern character with the character cocycle", 12,
       "assembled pairing equals the local index; degrees above dim M contribute nothing"},
  };
  return catalog;
}

const CheckInfo& check_info(const std::string& id) {
  for (const auto& c : check_catalog())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown check: " + id);
}

namespace {

int trials_or(const CheckOptions& o, int def) { return o.trials > 0 ? o.trials : def; }

std::vector<Form> random_elements(const ChartPtr& chart, int m, int count, Rng& rng) {
  std::vector<Form> a;
  for (int i = 0; i < count; ++i) a.push_back(random_function(chart, m, 1, rng));
  return a;
}

std::string trial_tag(const std::string& what, int t) { return what + " (trial " + std::to_string(t) + ")"; }

// ---------------------------------------------------------------- 1-6: identities

void induction_identity(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed);
  int trials = trials_or(o, 100);
  int kmax = std::clamp(o.k_max, 0, 10);
  long nonzero = 0;
  for (int t = 0; t < trials; ++t) {
    int dim = static_cast<int>(rng.uniform(1, 3));
    int m = static_cast<int>(rng.uniform(1, 3));
    auto chart = Chart::polynomial(dim);
    ConnectionData c = curvature_and_lift(random_connection(chart, m, 1, rng));
    int k = t % (kmax + 1);
    IdentityCheck id = verify_induction_identity(c, random_elements(chart, m, k + 1, rng));
    if (!id.holds) ++nonzero;
    r.expect(id.holds && id.defect.is_zero(), trial_tag("induction defect nonzero", t));
  }
  r.set("trials", fmt_int(trials));
  r.set("k_max", fmt_int(kmax));
  r.set("nonzero_defects", fmt_int(nonzero));
}

void psi_fibonacci(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 1);
  auto R = Chart::polynomial(2);
  ConnectionData conn = curvature_and_lift(random_connection(R, 1, 1, rng));
  const long expect[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  std::string counts;
  for (int k = 0; k <= 10; ++k) {
    PsiExpansion e = psi(conn, random_elements(R, 1, k, rng));
    long n = static_cast<long>(e.terms.size());
    counts += (k ? "," : "") + fmt_int(n);
    r.expect(n == expect[k], "term count of psi_" + std::to_string(k));
    r.expect(static_cast<long>(fibonacci(k + 1)) == expect[k], "fibonacci(" + std::to_string(k + 1) + ")");
  }
  r.set("term_counts", counts);
  auto R3 = Chart::polynomial(3);
  int trials = trials_or(o, 10);
  for (int t = 0; t < trials; ++t) {
    ConnectionData c = curvature_and_lift(random_connection(R3, 2, 1, rng));
    for (int k = 0; k <= 7; ++k) {
      auto a = random_elements(R3, 2, k, rng);
      r.expect(psi(c, a).sum == psi_recursive(c, a), trial_tag("recursion differs for k = " + std::to_string(k), t));
    }
  }
  r.set("recursion_trials", fmt_int(trials));
}

void rho_cocycle(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 2);
  auto R3 = Chart::polynomial(3);
  int small = trials_or(o, 20);
  for (int t = 0; t < small; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    ConnectionData c = curvature_and_lift(random_connection(R3, m, 1, rng));
    int k = static_cast<int>(rng.uniform(1, 3));
    r.expect(rho(c, hochschild_b(random_tensors(R3, m, k + 1, 1, rng))).is_zero(), trial_tag("rho o b != 0", t));
    r.expect(cyclic_defect(c, random_elements(R3, m, k + 1, rng)).is_zero(), trial_tag("cyclic defect", t));
  }
  // (size, blocks, torus dimension): matrix-valued connections stay on T^2 to bound the cost.
  const int shapes[][3] = {{2, 1, 3}, {2, 2, 3}, {3, 3, 3}, {4, 2, 2}, {3, 1, 2}};
  int projections = trials_or(o, 50);
  for (int t = 0; t < projections; ++t) {
    auto [size, blocks, dim] = shapes[t % 5];
    auto T = Chart::torus(dim);
    ConnectionData c = curvature_and_lift(random_connection(T, size / blocks, 1, rng));
    Elem p = random_trig_projection(T, size, rng);
    r.expect(p * p == p, trial_tag("random projection is not idempotent", t));
    for (int n = 0; n <= 1; ++n) {
      Form x = rho(c, chern_cyclic_terms(p, blocks, n));
      r.expect(d(x).is_zero(), trial_tag("rho(ch) not closed", t));
      r.expect(x == rho_chern_closed_form(c, p, blocks, n), trial_tag("rho(ch) differs from closed form", t));
    }
  }
  r.set("cocycle_trials", fmt_int(small));
  r.set("projections", fmt_int(projections));
}

void bB_relations(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 3);
  auto R = Chart::polynomial(2);
  int trials = trials_or(o, 100);
  for (int t = 0; t < trials; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    int k = static_cast<int>(rng.uniform(1, std::clamp(o.k_max, 1, 4)));
    auto ts = random_tensors(R, m, k, 2, rng);
    Chain red = Chain::from_tensors(ts, ChainMode::reduced);
    if (k >= 2) r.expect(hochschild_b(hochschild_b(red)).is_zero(), trial_tag("b^2 != 0", t));
    r.expect(connes_B(connes_B(red)).is_zero(), trial_tag("B^2 != 0", t));
    r.expect((hochschild_b(connes_B(red)) + connes_B(hochschild_b(red))).is_zero(), trial_tag("bB + Bb != 0", t));
  }
  r.set("trials", fmt_int(trials));
}

void jlo_rho(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 4);
  auto T = Chart::torus(2);
  ConnectionData flat = curvature_and_lift(random_connection(T, 1, 1, rng));
  auto c1 = compare_chkr_rho(flat, random_trig_projection(T, 2, rng), 2, T, 64);
  r.expect(flat.sigma.is_zero(), "flat connection has sigma != 0");
  r.expect(c1.exact_agree, "flat: exact integrals differ");
  r.expect(c1.numeric_difference < 1e-8, "flat: quadrature values differ");
  ConnectionData curved = curvature_and_lift(random_connection(T, 2, 1, rng));
  auto c2 = compare_chkr_rho(curved, random_trig_projection(T, 4, rng), 2, T, 64);
  r.expect(!curved.sigma.is_zero(), "curved connection has sigma = 0");
  r.expect(c2.numeric_difference < 1e-8, "curved: quadrature values differ by more than 1e-8");
  r.set("flat.jlo", c1.jlo_exact.str());
  r.set("flat.rho", c1.rho_exact.str());
  r.set("flat.numeric_difference", fmt_real(c1.numeric_difference));
  r.set("curved.jlo", c2.jlo_exact.str());
  r.set("curved.rho", c2.rho_exact.str());
  r.set("curved.exact_agree", fmt_bool(c2.exact_agree));
  r.set("curved.numeric_difference", fmt_real(c2.numeric_difference));
  r.set("grid", "64x64");
}

void bianchi_twisted(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 5);
  int trials = trials_or(o, 100);
  for (int t = 0; t < trials; ++t) {
    int dim = static_cast<int>(rng.uniform(2, 4));
    int m = static_cast<int>(rng.uniform(1, 3));
    auto R = Chart::polynomial(dim);
    ConnectionData c = curvature_and_lift(random_connection(R, m, 2, rng));
    r.expect(nabla(c, c.sigma).is_zero(), trial_tag("nabla sigma != 0", t));
    Form a = random_form(R, m, static_cast<int>(rng.uniform(0, 2)), 2, rng);
    r.expect(d(a.trace()) == nabla(c, a).trace(), trial_tag("tr o nabla != d o tr", t));
  }
  auto R3 = Chart::polynomial(3), R4 = Chart::polynomial(4);
  for (int t = 0; t < trials; ++t) {
    auto R = (t % 2) ? R3 : R4;
    Form c2 = d(random_form(R, 1, 2, 2, rng));
    if (rng.coin()) c2 += Form::basis(R->dim, 0b0111, Matrix<Poly>::identity(1)).scaled(rng.small_gq());
    Form b = random_form(R, 1, 2, 2, rng);
    Form c1 = c2 + d(b);
    Form w = random_form(R, static_cast<int>(rng.uniform(1, 2)), static_cast<int>(rng.uniform(0, 2)), 2, rng);
    r.expect(d_twisted(c2, d_twisted(c2, w)).is_zero(), trial_tag("d_c^2 != 0", t));
    r.expect(d_twisted(c2, exp_beta_intertwiner(b, w)) == exp_beta_intertwiner(b, d_twisted(c1, w)),
             trial_tag("exp(beta) does not intertwine", t));
  }
  r.set("trials", fmt_int(trials));
}

// ---------------------------------------------------------------- 7: cech

void dd_class(const CheckOptions& o, CheckResult& r) {
  auto pt = pauli_triangle();
  DDCocycle cp = scalar_check_and_mu(pt.transitions, pt.nerve);
  r.expect(cp.mu_exact.size() == 1 && cp.mu_exact[0] == Gq::I(), "Pauli triangle mu_012 != i");
  r.expect(cp.dmu_is_one, "Pauli triangle d mu != 1");
  r.set("pauli.mu_012", cp.mu_exact.empty() ? "none" : to_string(cp.mu_exact[0]));

  auto sc = rp2_times_circle();
  DDCocycle dd = scalar_check_and_mu(sc.transitions, sc.nerve);
  r.expect(dd.dmu_is_one, "RP2 x S1: d mu != 1");
  r.expect(dd.max_rounding == 0.0, "RP2 x S1: delta not integral");
  CohomologyClass cls = h3_class(sc.nerve, dd.delta);  // throws if delta is not closed
  r.expect(cls.order() == 2, "RP2 x S1: class order != 2");
  r.set("rp2xs1.class", cls.to_text());
  r.set("rp2xs1.max_rounding", fmt_real(dd.max_rounding));

  Rng rng(o.seed + 6);
  int trials = trials_or(o, 50);
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    std::map<std::pair<int, int>, cd> lambda;
    for (const auto& e : sc.nerve.simplices(1)) lambda[{e[0], e[1]}] = std::polar(1.0, rng.uniform_real(0, 2 * M_PI));
    DDCocycle d2 = scalar_check_and_mu(rephased(sc.transitions, lambda), sc.nerve);
    CohomologyClass c2 = h3_class(sc.nerve, d2.delta);
    bool same = d2.dmu_is_one && c2.torsion_coords == cls.torsion_coords && c2.free_coords == cls.free_coords;
    agree += same;
    r.expect(same, trial_tag("class changed under rephasing", t));
  }
  r.set("rephasings", fmt_int(trials));
  r.set("rephasings_agreeing", fmt_int(agree));

  auto w = torsion_witness(sc.nerve, dd.delta, 2);
  r.expect(w.has_value(), "no torsion witness for 2 delta");
  if (w) {
    auto dw = coboundary(sc.nerve, 2, *w);
    bool ok = true;
    for (std::size_t i = 0; i < dw.size(); ++i) ok = ok && dw[i] == 2 * dd.delta[i];
    r.expect(ok, "torsion witness does not solve dc = 2 delta");
  }
  r.expect(!torsion_witness(sc.nerve, dd.delta, 1).has_value(), "delta itself is a coboundary");

  Nerve S3 = Nerve::boundary_of_4_simplex();
  std::vector<long> gen(S3.simplices(3).size(), 0);
  gen[0] = 1;
  CohomologyClass h = h3_class(S3, gen);
  r.expect(h.free_rank == 1 && h.torsion_orders.empty() && !h.is_zero(), "H^3 of the boundary of the 4-simplex != Z");
  r.set("s3.h3_free_rank", fmt_int(h.free_rank));
  r.set("s3.h3_torsion_factors", fmt_int(static_cast<long>(h.torsion_orders.size())));
}

// ---------------------------------------------------------------- 8: algebroid

Derivation random_derivation(const DerivationAlgebra& g, const ChartPtr& chart, Rng& rng) {
  Derivation X{random_poly_matrix(chart, g.size(), 1, rng, 2), {}};
  for (int i = 0; i < g.dim(); ++i) X.v.push_back(rng.coin() ? rng.small_gq(2, 1, false) : Gq(0));
  return X;
}

std::vector<Derivation> random_derivations(const DerivationAlgebra& g, const ChartPtr& chart, int n, Rng& rng) {
  std::vector<Derivation> out;
  for (int i = 0; i < n; ++i) out.push_back(random_derivation(g, chart, rng));
  return out;
}

// Pairwise commuting inner derivations U diag(f_i) U^*.
std::vector<Derivation> commuting_family(const DerivationAlgebra& g, const ChartPtr& chart, int n, Rng& rng) {
  Elem U = to_poly_matrix(random_rational_unitary(g.size(), rng));
  Elem Us = U.adjoint();
  std::vector<Derivation> out;
  for (int i = 0; i < n; ++i) {
    Elem D(g.size(), g.size());
    for (int a = 0; a < g.size(); ++a) D(a, a) = random_poly(chart, 1, rng, 2);
    out.push_back(g.inner(U * D * Us));
  }
  return out;
}

void varrho_suite(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 7);
  auto R = Chart::polynomial(2);
  int trials = trials_or(o, 100);
  int kmax = std::clamp(o.k_max, 1, 3);
  for (int t = 0; t < trials; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    DerivationAlgebra h(curvature_and_lift(random_connection(R, m, 1, rng)));
    int k = static_cast<int>(rng.uniform(0, std::min(kmax, 2)));
    auto c = random_tensors(R, m, k + 1, 2, rng);
    r.expect(varrho(h, hochschild_b(c), random_derivations(h, R, k, rng)).is_zero(), trial_tag("varrho o b != 0", t));
    auto c2 = random_tensors(R, m, k, 2, rng);
    auto Xs = random_derivations(h, R, k + 1, rng);
    Poly lhs = varrho_normalized_form(h, connes_B(c2), k + 1).eval(Xs);
    Poly rhs = ce_differential(h, varrho_normalized_form(h, c2, k)).eval(Xs);
    r.expect(lhs == rhs, trial_tag("normalized varrho o B != d_CE o varrho", t));
    r.expect(varrho(h, connes_B(c2), Xs) == rhs.scaled(Gq(factorial(static_cast<unsigned>(k + 1)))),
             trial_tag("unnormalized varrho o B lacks the factor (k + 1)", t));

    int mc = static_cast<int>(rng.uniform(2, 3));
    DerivationAlgebra g(curvature_and_lift(random_connection(R, mc, 1, rng)));
    int kc = static_cast<int>(rng.uniform(1, kmax));
    auto fam = commuting_family(g, R, kc, rng);
    auto cycle = hochschild_b(random_tensors(R, mc, kc + 1, 2, rng));
    r.expect(varrho(g, cycle, fam).is_zero(), trial_tag("varrho of a cycle on commuting derivations != 0", t));
  }
  r.set("trials", fmt_int(trials));
  r.set("normalization", "varrho_k / k! for the B identity");
}

// ---------------------------------------------------------------- 9-10: spectral

void sobolev_suite(const CheckOptions& o, CheckResult& r) {
  Rng rng(o.seed + 8);
  auto ev = circle_dirac_spectrum(200);
  SobolevScale scale = SobolevScale::from_spectrum(ev);
  int vectors = trials_or(o, 1000);
  double worst = 1;
  for (int t = 0; t < vectors; ++t) {
    auto c = random_coordinates(ev, rng.uniform_real(0, 4), rng);
    SobolevVector v = group_components(scale, ev, c);
    double s = rng.uniform_real(0, 3), p = rng.uniform_real(1, 8);
    double dd = std::array<double, 3>{0.6, 1.0, 1.5}[rng.uniform(0, 2)];
    worst = std::min(worst, sobolev_embedding_check(scale, v, s, p, dd).min_slack());
  }
  r.expect(worst >= -1e-12, "embedding inequality violated beyond 1e-12");
  r.set("vectors", fmt_int(vectors));
  r.set("truncation", "200");
  r.set("worst_slack", fmt_real(worst));
  SpectrumFamily circle = circle_dirac_spectrum;
  auto r1 = spectral_dimension_probe(circle, 1.0);
  auto r04 = spectral_dimension_probe(circle, 0.4);
  r.expect(r1.verdict == Summability::summable, "d = 1 not summable");
  r.expect(r04.verdict == Summability::divergent, "d = 0.4 not divergent");
  bool growing = true;
  for (std::size_t i = 1; i < r04.partial_sums.size(); ++i)
    growing = growing && r04.partial_sums[i] > r04.partial_sums[i - 1];
  r.expect(growing, "d = 0.4 partial sums not increasing");
  r.set("d1.verdict", to_string(r1.verdict));
  r.set("d1.decay_exponent", fmt_real(r1.decay_exponent));
  r.set("d0.4.verdict", to_string(r04.verdict));
  r.set("d0.4.decay_exponent", fmt_real(r04.decay_exponent));
}

MatQ diag2(int a, int b) {
  MatQ m(2, 2);
  m(0, 0) = Gq(a);
  m(1, 1) = Gq(b);
  return m;
}

MatQ offdiag11() {
  MatQ D(2, 2);
  D(0, 1) = Gq(1);
  D(1, 0) = Gq(1);
  return D;
}

void morita_suite(const CheckOptions& o, CheckResult& r) {
  SpectralTripleData t = SpectralTripleData::finite(offdiag11(), diag2(1, -1), {diag2(1, 0), diag2(0, 1)});
  SpectralTripleData id = morita_lift(t, MatQ::identity(2), 1);
  r.expect(id.D == t.D && *id.gamma == *t.gamma && id.algebra == t.algebra && id.support == MatQ::identity(2),
           "p = 1 does not return the original triple");
  int ind = index_pairing(t, diag2(1, 0), 1);
  r.expect(ind == 1, "finite example index != 1");
  r.set("finite_example.index", fmt_int(ind));

  Rng rng(o.seed + 9);
  int trials = trials_or(o, 50);
  int commuting = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int rr = static_cast<int>(rng.uniform(1, 3));
    DiagonalTriple dt = random_diagonal_triple(rr, 2, rng);
    int m = static_cast<int>(rng.uniform(1, 3));
    std::vector<MatQ> pj;
    for (int j = 0; j < rr; ++j) pj.push_back(random_projection_below(MatQ::identity(m), m, rng));
    MatQ p = diagonal_element(dt.units, pj);
    int k = static_cast<int>(rng.uniform(1, 2));
    std::vector<MatQ> qj;
    for (int j = 0; j < rr; ++j) qj.push_back(random_projection_below(kron(MatQ::identity(k), pj[j]), k * m, rng));
    FunctorialityReport f = pairing_functoriality_check(dt.triple, p, m, diagonal_element(dt.units, qj), k);
    commuting += f.ok();
    r.expect(f.ok(), trial_tag("functoriality square does not commute", trial));
  }
  r.set("functoriality_instances", fmt_int(trials));
  r.set("functoriality_commuting", fmt_int(commuting));

  std::vector<MatQ> units;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      MatQ e(2, 2);
      e(a, b) = Gq(1);
      units.push_back(e);
    }
  auto down = inner_fluctuation_to(SpectralTripleData::finite(offdiag11(), std::nullopt, units), MatQ(2, 2));
  auto up = inner_fluctuation_to(SpectralTripleData::finite(MatQ(2, 2), std::nullopt, units), offdiag11());
  r.expect(down.has_value() && down->is_zero(), "D does not fluctuate to 0");
  r.expect(!up.has_value(), "0 fluctuates to D");
  r.set("fluctuation.D_to_0", fmt_bool(down.has_value()));
  r.set("fluctuation.0_to_D", fmt_bool(up.has_value()));
}

// ---------------------------------------------------------------- 11-12: geom

void index_suite(const CheckOptions& o, CheckResult& r) {
  Geometry S = sphere2();
  LocalIndex zero = local_index(S, Elem(1, 1));
  r.expect(zero.exact_integral.is_zero() && zero.snapped.integer == 0 && zero.snapped.residual == 0.0,
           "local_index(p = 0) != 0");
  r.set("zero.value", fmt_real(zero.snapped.value));
  LocalIndex one = local_index(S, Elem::identity(1));
  r.expect(one.snapped.integer == 0 && one.snapped.residual < 1e-4, "local_index(p = 1) does not snap to 0");
  r.set("one.integer", fmt_int(one.snapped.integer));
  r.set("one.residual", fmt_real(one.snapped.residual));

  Elem p = bott_projection(S.chart);
  ChernNumber c = chern_number(S, p);
  r.expect(std::abs(c.snapped.integer) == 1 && c.snapped.residual < 1e-6, "chern_number(Bott) != +-1");
  r.set("bott.chern_number", fmt_int(c.snapped.integer));
  r.set("bott.chern_residual", fmt_real(c.snapped.residual));

  int refine = std::max(o.refine, 2);
  RefinementTrend trend = index_refinement(S, p, refine);
  for (const auto& l : trend.levels) {
    std::string key = "bott.level" + std::to_string(l.level);
    r.set(key + ".value", fmt_real(l.snapped.value));
    r.set(key + ".integer", fmt_int(l.snapped.integer));
    r.set(key + ".residual", fmt_real(l.snapped.residual));
    r.expect(l.snapped.integer == 2 * c.snapped.integer, "local_index(Bott) != 2 chern_number at level " +
                                                              std::to_string(l.level));
  }
  const LocalIndex& last = trend.levels.back();
  r.expect(last.snapped.integer % 2 == 0, "local_index(Bott) is odd");
  r.expect(last.snapped.residual < 1e-4, "local_index(Bott) residual >= 1e-4");
  r.expect(trend.decreasing(), "residual does not decrease under refinement");
  r.set("bott.exact", last.exact_integral.str());

  FourierTorusModel model(32);
  double worst = 0;
  for (double t : {0.5, 1.0, 2.0}) {
    double s = model.mckean_singer(t);
    r.set("fourier.supertrace_t" + fmt_real(t), fmt_real(s));
    worst = std::max(worst, std::abs(s - model.index()));
  }
  r.expect(worst < 1e-8, "McKean-Singer supertrace varies beyond 1e-8");
  r.set("fourier.N", "32");
  r.set("fourier.index", fmt_int(model.index()));
}

void pairing_suite(const CheckOptions& o, CheckResult& r) {
  Geometry S = sphere2();
  Elem p = bott_projection(S.chart);
  LocalIndex li = local_index(S, p, 8);
  PairingAssembly a = assembled_pairing(S, p, 1, 8);
  PairingAssembly b = assembled_pairing(S, p, 2, 8);
  double diff = std::abs(a.total_quadrature - li.snapped.value);
  r.expect(diff < 1e-6, "assembled pairing differs from local_index by >= 1e-6");
  r.expect(std::abs(a.total_exact - li.exact_value) < 1e-12, "exact assembled pairing differs from local_index");
  r.expect(b.total_exact == a.total_exact && b.total_quadrature == a.total_quadrature,
           "appending degrees above dim M changed the pairing");
  r.set("bott.local_index", fmt_real(li.snapped.value));
  r.set("bott.assembled", fmt_complex(a.total_quadrature));
  r.set("bott.assembled_with_degree4", fmt_complex(b.total_quadrature));
  r.set("bott.difference", fmt_real(diff));

  Geometry T = torus2();
  Rng rng(o.seed + 11);
  int trials = trials_or(o, 3);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Elem q = random_trig_projection(T.chart, 2, rng);
    LocalIndex lq = local_index(T, q, 8);
    PairingAssembly aq = assembled_pairing(T, q, 2, 8);
    worst = std::max(worst, std::abs(aq.total_quadrature - lq.snapped.value));
  }
  r.expect(worst < 1e-6, "torus: assembled pairing differs from local_index");
  r.set("torus.projections", fmt_int(trials));
  r.set("torus.worst_difference", fmt_real(worst));
}

}  // namespace

CheckResult run_check(const std::string& id, const CheckOptions& opts) {
  static const std::map<std::string, std::function<void(const CheckOptions&, CheckResult&)>> runners = {
      {"induction-identity", induction_identity}, {"psi-fibonacci", psi_fibonacci}, {"rho-cocycle", rho_cocycle},
      {"bB-relations", bB_relations},             {"jlo-rho", jlo_rho},             {"bianchi-twisted", bianchi_twisted},
      {"dd-class", dd_class},                     {"varrho", varrho_suite},         {"sobolev", sobolev_suite},
      {"morita", morita_suite},                   {"index", index_suite},           {"pairing", pairing_suite},
  };
  CheckResult r;
  r.info = check_info(id);
  runners.at(id)(opts, r);
  return r;
}

}  // namespace ptk
