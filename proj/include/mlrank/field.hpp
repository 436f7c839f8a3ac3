#ifndef MLRANK_FIELD_HPP
#define MLRANK_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mlrank {

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Element of F_{p^k}: coordinates in the power basis 1, t, ..., t^{k-1} of
// F_p[t]/(modulus), constant term first, each in [0, p).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr F, std::vector<int64_t> coords);

  const FieldPtr& field() const { return F_; }
  const std::vector<int64_t>& coords() const { return c_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  FieldElem inv() const;
  FieldElem pow(uint64_t e) const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  // Canonical order (by integer code); used for deterministic containers.
  friend bool operator<(const FieldElem& a, const FieldElem& b);

 private:
  FieldPtr F_;
  std::vector<int64_t> c_;
};

// Immutable description of F_{p^k}.  For k > 1 the modulus is the monic
// irreducible degree-k polynomial over F_p with the smallest coefficient code
// (sum c_i p^i), so contexts are reproducible across runs and implementations.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  static FieldPtr make(int64_t p, int k = 1);
  // modulus given explicitly (k+1 coefficients, constant first, monic);
  // validated prime + irreducible.
  static FieldPtr make_with_modulus(int64_t p, int k, std::vector<int64_t> modulus);
  // q = p^k for the smallest prime p dividing q
  static FieldPtr make_from_q(int64_t q);

  int64_t p() const { return p_; }
  int k() const { return k_; }
  int64_t q() const { return q_; }
  // k+1 coefficients, constant term first, leading coefficient 1; empty for k = 1
  const std::vector<int64_t>& modulus() const { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(int64_t code) const;  // base-p digits of code, 0 <= code < q
  int64_t code(const FieldElem& a) const;  // inverse of from_int
  // integer scalar reduced mod p, embedded as a constant
  FieldElem from_scalar(int64_t v) const;

  bool same(const FieldCtx& other) const;

  std::string describe() const;  // "F_4 = F_2[t]/(t^2+t+1)" style

  // raw coordinate arithmetic; lengths must be k
  std::vector<int64_t> add_raw(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> sub_raw(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
  std::vector<int64_t> mul_raw(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;

 private:
  FieldCtx(int64_t p, int k, std::vector<int64_t> modulus);

  int64_t p_ = 0;
  int k_ = 1;
  int64_t q_ = 0;
  std::vector<int64_t> modulus_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);
bool is_prime(int64_t p);

// Embedding F_{p^j} -> F_{p^{j*e}} together with a left-inverse projection
// that is linear over the subfield.  The projection extracts the coordinate
// of 1 in a deterministic subfield-basis of the big field whose first vector
// is 1, so project(embed(a)) == a.
class ExtensionMap {
 public:
  ExtensionMap(FieldPtr sub, FieldPtr super);

  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& super() const { return super_; }
  int degree() const { return e_; }

  FieldElem embed(const FieldElem& a) const;
  FieldElem project(const FieldElem& x) const;  // phi
  // subfield-basis gamma_1..gamma_e of the big field, gamma_1 == 1
  const std::vector<FieldElem>& basis() const { return basis_; }
  // x = sum_i embed(a_i) * gamma_i; returns (a_1, ..., a_e)
  std::vector<FieldElem> decompose(const FieldElem& x) const;
  bool in_base(const FieldElem& x) const;

 private:
  FieldPtr sub_;
  FieldPtr super_;
  int e_;
  FieldElem root_;                      // image in super of sub's generator
  std::vector<FieldElem> basis_;        // gamma_1..gamma_e
  std::vector<std::vector<int64_t>> inv_;  // mod-p inverse of the (m,u) basis matrix
};

}  // namespace mlrank

#endif
