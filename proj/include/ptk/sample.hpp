#pragma once

#include <vector>

#include "ptk/matrix.hpp"
#include "ptk/scalar.hpp"

namespace ptk {

// Numeric coefficient ring: values at the nodes of a fixed quadrature grid.
// A field with one value is a constant broadcast over all nodes; an empty field is 0.
class SampleField {
 public:
  SampleField() = default;
  explicit SampleField(cd c) {
    if (c != cd(0.0, 0.0)) v_.assign(1, c);
  }
  explicit SampleField(std::vector<cd> values) : v_(std::move(values)) {}

  const std::vector<cd>& values() const { return v_; }
  std::size_t size() const { return v_.size(); }
  cd at(std::size_t k) const { return v_.empty() ? cd(0.0, 0.0) : (v_.size() == 1 ? v_[0] : v_[k]); }
  bool is_zero() const { return v_.empty(); }

  SampleField& operator+=(const SampleField& o) { return combine(o, [](cd a, cd b) { return a + b; }); }
  SampleField& operator-=(const SampleField& o) { return combine(o, [](cd a, cd b) { return a - b; }); }
  SampleField operator-() const {
    SampleField r = *this;
    for (auto& x : r.v_) x = -x;
    return r;
  }
  friend SampleField operator+(SampleField a, const SampleField& b) { return a += b; }
  friend SampleField operator-(SampleField a, const SampleField& b) { return a -= b; }
  friend SampleField operator*(const SampleField& a, const SampleField& b) {
    if (a.v_.empty() || b.v_.empty()) return SampleField();
    SampleField r;
    std::size_t n = std::max(a.v_.size(), b.v_.size());
    r.v_.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.v_[k] = a.at(k) * b.at(k);
    return r;
  }
  friend bool operator==(const SampleField& a, const SampleField& b) { return a.v_ == b.v_; }

 private:
  template <class F>
  SampleField& combine(const SampleField& o, F f) {
    if (o.v_.empty()) return *this;
    std::size_t n = std::max(v_.size(), o.v_.size());
    std::vector<cd> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = f(at(k), o.at(k));
    v_.swap(r);
    return *this;
  }
  std::vector<cd> v_;
};

inline bool is_zero(const SampleField& f) { return f.is_zero(); }
inline SampleField conj(const SampleField& f) {
  std::vector<cd> v = f.values();
  for (auto& x : v) x = std::conj(x);
  return SampleField(std::move(v));
}
template <>
inline SampleField from_gq<SampleField>(const Gq& z) {
  return SampleField(z.to_complex());
}

}  // namespace ptk
