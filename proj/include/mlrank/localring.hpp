#ifndef MLRANK_LOCALRING_HPP
#define MLRANK_LOCALRING_HPP

#include <cstdint>
#include <map>

#include "mlrank/mlmatrix.hpp"

namespace mlrank {

// Truncated image of a rational function defined at a base point p: one
// multilinear component per subset S of the blocks 1..d, where the component
// at S is the coefficient of prod_{i in S} t_i in f(p_1 + t_1 y_1, ...,
// p_d + t_d y_d).  Multiplication convolves components over disjoint unions,
// which is exact for these square-free t-coefficients; one nilpotent
// direction per block.  Subsets are bitmasks with bit i-1 for block i.
class LocalElem {
 public:
  LocalElem() = default;
  LocalElem(FieldPtr F, int d, int n, Point p);  // zero

  static LocalElem constant(FieldPtr F, int d, int n, Point p, const FieldElem& c);

  const FieldPtr& field() const { return F_; }
  int d() const { return d_; }
  int n() const { return n_; }
  const Point& base_point() const { return p_; }
  uint32_t full_mask() const { return (d_ >= 32) ? 0 : ((1u << d_) - 1); }

  // component as a form on the mask's blocks (zero form if absent)
  MultilinearForm component(uint32_t mask) const;
  void set_component(uint32_t mask, MultilinearForm f);
  const std::map<uint32_t, MultilinearForm>& components() const { return comps_; }

  bool is_zero() const;
  friend bool operator==(const LocalElem& a, const LocalElem& b);
  friend bool operator!=(const LocalElem& a, const LocalElem& b) { return !(a == b); }

 private:
  FieldPtr F_;
  int d_ = 0, n_ = 1;
  Point p_;
  std::map<uint32_t, MultilinearForm> comps_;
};

// truncation of a multilinear form on blocks 1..d: component at S is f with
// x_i kept for i in S and x_i := p_i otherwise
LocalElem expand(const MultilinearForm& f, const Point& p);

// truncation of a general polynomial in d*n variables (variable (b, j) at
// index (b-1)*n + j-1); keeps only square-free t-degrees per block
LocalElem expand_poly(const Poly& f, int d, int n, const Point& p);

LocalElem lr_add(const LocalElem& a, const LocalElem& b);
LocalElem lr_sub(const LocalElem& a, const LocalElem& b);
LocalElem lr_neg(const LocalElem& a);
LocalElem lr_scale(const LocalElem& a, const FieldElem& c);
LocalElem lr_mul(const LocalElem& a, const LocalElem& b);
// finite Neumann series; requires a unit (nonzero empty-set component)
LocalElem lr_inv(const LocalElem& a);

// coefficient of t_1...t_d: the multilinear approximation at the base point
MultilinearForm approx_extract(const LocalElem& a);

// Independent construction of the approximation of num/den at p, by exact
// quotient-rule differentiation: one formal partial per block, evaluated at
// p.  num/den must be homogeneous of degree 1 in every block and den(p) != 0.
// Symbolic blow-up limits this to d*n <= 6; it exists as a cross-check.
MultilinearForm approx_derivative_oracle(const Poly& num, const Poly& den, int d, int n,
                                         const Point& p);

}  // namespace mlrank

#endif
