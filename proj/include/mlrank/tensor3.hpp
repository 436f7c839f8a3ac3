#ifndef MLRANK_TENSOR3_HPP
#define MLRANK_TENSOR3_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mlrank/decomp.hpp"
#include "mlrank/mlmatrix.hpp"
#include "mlrank/rational.hpp"

namespace mlrank {

// 3-tensor: a multilinear form on blocks {1,2,3}
struct Tensor3 {
  MultilinearForm f;

  const FieldPtr& field() const { return f.field(); }
  int n() const { return f.n(); }
};

Tensor3 make_tensor(MultilinearForm f);

// n x n matrix of linear forms in the first block with
// T = sum_{j,k} m_{jk}(x_1) x_{2,j} x_{3,k}
FormMatrix flatten(const Tensor3& T);
Tensor3 unflatten(const FormMatrix& M);

struct ARResult {
  Rational bias;  // Pr over (x_1, x_2) that T[x_1, x_2] is the zero form
  double ar = 0;  // -log_q bias, for display; assertions use the exact bias
};

// bias computed two independent ways (direct enumeration and the rank-based
// formula E_{x_1} q^{-rank}), cross-checked exactly
ARResult analytic_rank(const Tensor3& T, uint64_t budget = 1u << 20);

struct SubspaceResult {
  VecF y0;
  std::vector<VecF> U_basis;  // kernel of x -> B(x, y0)
  int codim = 0;
  Rational avg_rank_U;        // E_{x in U} rank of the flattened matrix
  bool certificate = false;   // a * avg + codim <= (a+1) * AR, exactly
};

// Finds y_0 minimizing a * E_{x in ker B(-, y_0)}[rank] + codim (lexicographic
// tie-break) and checks the certificate against the analytic rank with
// cleared denominators.
SubspaceResult find_subspace(const Tensor3& T, const Rational& a,
                             uint64_t budget = 1u << 20);

struct SliceTerm {
  int slot = 1;             // 1, 2 or 3
  MultilinearForm lin;      // linear form on {slot}
  MultilinearForm bil;      // bilinear form on the other two blocks
};

struct SliceDecomposition {
  std::vector<SliceTerm> terms;
  Rational bias;            // of the input tensor
};

Tensor3 slice_value(const SliceDecomposition& D, const FieldPtr& F, int n);

// Peel the first block onto the subspace from find_subspace (basis change),
// emit one slice per removed coordinate, then decompose the restricted
// flattened matrix with the d = 1 algorithm, converting its terms to slot-2
// and slot-3 slices.  The slice count c obeys q^{c(q-1)} <= bias^{-(3q-1)},
// verified in integers on every run.
SliceDecomposition slice_decompose(const Tensor3& T,
                                   std::optional<Rational> a_override = std::nullopt,
                                   uint64_t budget = 1u << 20);

// exact check of count <= (3 + 2/(q-1)) * AR given the bias
bool slice_count_within_bound(int count, const Rational& bias, int64_t q);

// exact check of AR <= count, i.e. bias >= q^{-count}
bool ar_at_most(int count, const Rational& bias, int64_t q);

}  // namespace mlrank

#endif
