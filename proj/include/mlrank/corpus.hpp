#ifndef MLRANK_CORPUS_HPP
#define MLRANK_CORPUS_HPP

#include <cstdint>
#include <string>

#include "mlrank/mlmatrix.hpp"
#include "mlrank/tensor3.hpp"

namespace mlrank {

struct ExampleParams {
  int64_t q = 2;
  int k = 2;   // tight families
  int d = 2;   // tight-kron
};

// Canonical instances:
//   intro-diag   diag(a1, a2, a1+a2), d=1, n=2
//   intro-skew   3x3 alternating matrix in a1, a2, a3, d=1, n=3
//   tight-diag   diagonal of all normalized nonzero linear forms in k
//                variables, size (q^k-1)/(q-1)
//   tight-kron   d-fold Kronecker product of tight-diag, one block per factor
//   ex45         the 5x5 two-block matrix whose differential Schur complement
//                meets the term-count and rank bounds with equality
FormMatrix make_example(const std::string& name, const ExampleParams& params);

// blockwise Kronecker product: B's blocks are shifted past A's
FormMatrix kron_disjoint(const FormMatrix& A, const FormMatrix& B);

// Reproducible sparse random instances.  Each coefficient consumes two words
// of the counter-based stream: one Bernoulli(density) draw, then a uniform
// nonzero element code.
FormMatrix gen_random(const FieldPtr& F, int d, int n, int rows, int cols,
                      double density, uint64_t seed);
Tensor3 gen_random_tensor(const FieldPtr& F, int n, double density, uint64_t seed);

}  // namespace mlrank

#endif
