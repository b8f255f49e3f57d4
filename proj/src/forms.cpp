#include "ptk/forms.hpp"

#include <sstream>

namespace ptk {

Form d(const Form& a) {
  Form out(a.dim(), a.size());
  for (const auto& [I, A] : a.comps())
    for (int i = 0; i < a.dim(); ++i) {
      FormMask e = FormMask(1) << i;
      if (I & e) continue;
      Matrix<Poly> dA(a.size(), a.size());
      bool any = false;
      for (int r = 0; r < a.size(); ++r)
        for (int c = 0; c < a.size(); ++c) {
          dA(r, c) = A(r, c).derivative(i);
          any = any || !dA(r, c).is_zero();
        }
      if (!any) continue;
      bool neg = std::popcount(I & (e - 1)) & 1;
      out.add(I | e, neg ? -dA : dA);
    }
  return out;
}

Form coordinate_function(const ChartPtr& chart, const Poly& f, int m) {
  return Form::function(chart->dim, Matrix<Poly>::scalar(m, f));
}

ConnectionData curvature_and_lift(const Form& theta) {
  if (theta.degree() != 1 && !theta.is_zero()) throw std::invalid_argument("connection form must have degree 1");
  ConnectionData c;
  c.theta = theta;
  c.omega = d(theta) + theta * theta;
  int m = theta.size();
  Form scalar_part = scalar_wedge(c.omega.trace().scaled(Gq(Rational(1, m))), Form::identity(theta.dim(), m));
  c.sigma = c.omega - scalar_part;
  return c;
}

Form nabla(const ConnectionData& conn, const Form& a) {
  return d(a) + graded_commutator(conn.theta, a);
}

Form dd_representative(const ConnectionData& conn, const Form& beta) {
  int dim = conn.theta.dim();
  Form ns = nabla(conn, conn.sigma);
  if (!ns.is_zero()) throw std::logic_error("Bianchi identity failed for the traceless curvature lift");
  if (beta.is_zero()) return Form(dim, 1);
  if (beta.size() != 1 || beta.degree() != 2) throw std::invalid_argument("beta must be a scalar 2-form");
  return d(beta);
}

Form d_twisted(const Form& c, const Form& w) {
  if (c.size() != 1) throw std::invalid_argument("twisting form must be scalar");
  if (!c.is_zero() && c.degree() != 3) throw std::invalid_argument("twisting form must have degree 3");
  if (!d(c).is_zero()) throw std::invalid_argument("twisting form is not closed");
  if (c.is_zero()) return d(w);
  return d(w) + scalar_wedge(c, w);
}

Form exp_beta_intertwiner(const Form& beta, const Form& w) {
  if (beta.is_zero()) return w;
  if (beta.size() != 1 || beta.degree() != 2) throw std::invalid_argument("beta must be a scalar 2-form");
  return scalar_wedge(form_exp(beta), w);
}

std::string to_text(const Form& f) {
  std::ostringstream os;
  os << "form dim=" << f.dim() << " size=" << f.size() << "\n";
  for (const auto& [I, A] : f.comps()) {
    os << "  degree " << std::popcount(I) << " [";
    bool first = true;
    for (int i = 0; i < f.dim(); ++i)
      if (I >> i & 1) {
        os << (first ? "" : " ") << i + 1;
        first = false;
      }
    os << "]\n";
    for (int r = 0; r < A.rows(); ++r) {
      os << "    ";
      for (int c = 0; c < A.cols(); ++c) os << (c ? " | " : "") << A(r, c).str();
      os << "\n";
    }
  }
  return os.str();
}

NForm sample(const Form& f, const std::vector<std::vector<double>>& var_values) {
  return f.map<SampleField>([&](const Poly& p) {
    if (p.is_zero()) return SampleField();
    if (p.is_constant()) return SampleField(p.constant_term().to_complex());
    std::vector<cd> v(var_values.size());
    for (std::size_t k = 0; k < var_values.size(); ++k) v[k] = p.eval(var_values[k]);
    return SampleField(std::move(v));
  });
}

}  // namespace ptk
