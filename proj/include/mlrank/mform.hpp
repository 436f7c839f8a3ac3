#ifndef MLRANK_MFORM_HPP
#define MLRANK_MFORM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlrank/field.hpp"

namespace mlrank {

// per-block variable indices (1-based), aligned with a form's block list
using Index = std::vector<int32_t>;
using VecF = std::vector<FieldElem>;
// block label -> assigned vector of length n
using Assignment = std::map<int, VecF>;

// Sparse multilinear form on a set S of blocks: a map from index tuples
// (i_s)_{s in S}, 1 <= i_s <= n, to nonzero coefficients.  S = {} is a single
// scalar; the zero form has an empty map.
class MultilinearForm {
 public:
  MultilinearForm() = default;
  MultilinearForm(FieldPtr F, std::vector<int> blocks, int n);

  static MultilinearForm scalar(FieldPtr F, int n, const FieldElem& c);
  static MultilinearForm monomial(FieldPtr F, std::vector<int> blocks, int n,
                                  const Index& idx, const FieldElem& coef);

  const FieldPtr& field() const { return F_; }
  const std::vector<int>& blocks() const { return blocks_; }
  int n() const { return n_; }
  const std::map<Index, FieldElem>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  FieldElem coeff(const Index& idx) const;
  // scalar value of a form on S = {}
  FieldElem scalar_value() const;

  void add_term(const Index& idx, const FieldElem& c);

  MultilinearForm scale(const FieldElem& c) const;
  friend MultilinearForm operator+(const MultilinearForm& a, const MultilinearForm& b);
  friend MultilinearForm operator-(const MultilinearForm& a, const MultilinearForm& b);
  MultilinearForm operator-() const;
  friend bool operator==(const MultilinearForm& a, const MultilinearForm& b);
  friend bool operator!=(const MultilinearForm& a, const MultilinearForm& b) { return !(a == b); }

 private:
  FieldPtr F_;
  std::vector<int> blocks_;  // sorted ascending
  int n_ = 0;
  std::map<Index, FieldElem> terms_;
};

// full and partial evaluation
FieldElem eval(const MultilinearForm& f, const Assignment& point);
MultilinearForm partial_eval(const MultilinearForm& f, const Assignment& sub);

// product of forms on disjoint block sets
MultilinearForm mul_disjoint(const MultilinearForm& f, const MultilinearForm& g);

// rename blocks through an injective map (old label -> new label)
MultilinearForm relabel_blocks(const MultilinearForm& f, const std::map<int, int>& rename);

// x_{b,j} -> sum_t L[j][t] x_{b,t}; i.e. f(x) -> f with block b replaced by
// L x_b.  No invertibility check here; see substitute_linear in mlmatrix.
MultilinearForm substitute_block_raw(const MultilinearForm& f, int block,
                                     const std::vector<VecF>& L);

// alpha/beta/gamma shorthand for blocks 1..3, x{i}_{j} beyond
std::string pretty(const MultilinearForm& f);

// --------------------------------------------------------------------------
// General sparse multivariate polynomials (for determinants, multiplicity,
// and the derivative-based approximation oracle).
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr F, int nvars);

  static Poly constant(FieldPtr F, int nvars, const FieldElem& c);
  static Poly variable(FieldPtr F, int nvars, int var);  // 0-based

  const FieldPtr& field() const { return F_; }
  int nvars() const { return nvars_; }
  const std::map<std::vector<int32_t>, FieldElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int32_t>& exp, const FieldElem& c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scale(const FieldElem& c) const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int var) const;        // formal, characteristic-aware
  Poly shift(const VecF& p) const;       // x -> x + p
  FieldElem eval(const VecF& p) const;
  std::optional<int> min_degree() const;    // none for the zero polynomial
  std::optional<int> total_degree() const;  // none for the zero polynomial

 private:
  FieldPtr F_;
  int nvars_ = 0;
  std::map<std::vector<int32_t>, FieldElem> terms_;
};

// flatten a form on blocks 1..d into a polynomial in d*n variables,
// variable (b, j) -> (b-1)*n + (j-1)
Poly form_to_poly(const MultilinearForm& f, int d, int n);

// per-block degrees if f is homogeneous in every block, else nullopt;
// the zero polynomial reports degree 0 in every block
std::optional<std::vector<int>> block_degrees(const Poly& f, int d, int n);

}  // namespace mlrank

#endif
