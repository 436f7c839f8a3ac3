#ifndef MLRANK_POLYOPS_HPP
#define MLRANK_POLYOPS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mlrank/mlmatrix.hpp"

namespace mlrank {

// Order of vanishing of f at p: the minimum total degree in the Taylor shift
// f(x + p).  nullopt encodes +infinity (the zero polynomial); callers that
// follow the multiplicity inequality must exclude f = 0.
std::optional<int> mult(const Poly& f, const VecF& p);

struct MultSZReport {
  int64_t lhs = 0;   // sum over S^n of mult(f, p)
  int64_t rhs = 0;   // deg(f) * |S|^{n-1}
  bool holds = false;
};

// sum_{p in S^n} mult(f, p) <= deg(f) |S|^{n-1} for nonzero f.  S defaults to
// the whole field.
MultSZReport multsz_check(const Poly& f, const std::vector<FieldElem>& S);
MultSZReport multsz_check(const Poly& f);

// exact determinant by cofactor expansion (small dimensions)
Poly det_poly(const std::vector<std::vector<Poly>>& M);
Poly det_poly(const FormMatrix& M);
// cofactor transpose: adj(A) * A = det(A) * I
std::vector<std::vector<Poly>> adjugate_poly(const std::vector<std::vector<Poly>>& M);

std::vector<std::vector<Poly>> to_poly_matrix(const FormMatrix& M);

}  // namespace mlrank

#endif
