#ifndef MLRANK_SCHUR_HPP
#define MLRANK_SCHUR_HPP

#include <cstdint>
#include <vector>

#include "mlrank/localring.hpp"
#include "mlrank/mlmatrix.hpp"

namespace mlrank {

// One outer-product term u (x) v: u is a length-a vector of forms on the
// subset S (bitmask), v a length-b vector of forms on the complement.
struct RankOneTerm {
  uint32_t subset_mask = 0;
  std::vector<MultilinearForm> u;
  std::vector<MultilinearForm> v;
};

FormMatrix outer_value(const RankOneTerm& t, const FieldPtr& F, int d, int n);
FormMatrix terms_value(const std::vector<RankOneTerm>& terms, const FieldPtr& F, int d,
                       int n, int rows, int cols);

// Zero-padded Schur complement of a scalar matrix with respect to the pivot
// block on (rows, cols): zero on the pivot rows and columns, D - C A^{-1} B
// elsewhere.  rank(M/A) = rank(M) - |rows|.
ScalarMatrix schur_scalar(const ScalarMatrix& M, const std::vector<int>& rows,
                          const std::vector<int>& cols);

struct DiffSchur {
  FormMatrix remainder;              // multilinear approximation of M/A at p
  std::vector<RankOneTerm> terms;    // M == remainder + sum of terms, exactly
  ScalarMatrix schur_at_p;           // empty-subset component: (M/A)(p), zero-padded
};

// Schur complement taken in the ring of rational functions localized at p,
// truncated to one nilpotent direction per block, followed by extraction of
// the multilinear part.  The difference M - remainder splits into at most
// 2^d * r outer products u_{i,S} (x) v_{i, [d] \ S}; terms are emitted by
// pivot index, then by subset in binary-counter order, zero terms pruned.
DiffSchur diff_schur(const FormMatrix& M, const std::vector<int>& rows,
                     const std::vector<int>& cols, const Point& p);

}  // namespace mlrank

#endif
