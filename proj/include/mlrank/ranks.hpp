#ifndef MLRANK_RANKS_HPP
#define MLRANK_RANKS_HPP

#include <cstdint>

#include "mlrank/mlmatrix.hpp"
#include "mlrank/rational.hpp"

namespace mlrank {

struct MaxRankResult {
  int rank = 0;
  Point argmax;    // first maximizer in lexicographic point order
  bool exact = false;  // exhaustive enumeration (sampled mode is a lower bound)
};

// maximum rank of M(p) over all p in (F^n)^d
MaxRankResult max_rank_exhaustive(const FormMatrix& M, uint64_t budget = 1u << 20);
MaxRankResult max_rank_sampled(const FormMatrix& M, int count, uint64_t seed);

// exact rational E_p[rank M(p)]
Rational avg_rank(const FormMatrix& M, uint64_t budget = 1u << 20);

// Exact commutative rank: the largest r with a nonzero r x r minor over the
// rational function field.  A deterministic evaluation probe over a small
// extension supplies the lower bound; minors are enumerated symbolically only
// above it (this phase requires min(a,b) <= 5 and d*n <= 12).
int comm_rank_symbolic(const FormMatrix& M);

// Lower bound correct with probability >= 1 - 2^{-trials}: evaluates at
// uniform points of F_{q^m}^{dn} with m minimal such that q^m > 2 d min(a,b)
// (each minor determinant has degree at most d min(a,b)).
int comm_rank_probabilistic(const FormMatrix& M, int trials = 40, uint64_t seed = 0);

// exact rational E_{p_d in F^n}[CR(M[p_d])], the expectation over the last
// block with symbolic inner rank
Rational expected_partial_cr(const FormMatrix& M, uint64_t budget = 1u << 20);

// Exact partition rank for d = 1 by exhausting compression shapes: the
// smallest r1 + r2 over subspace pairs U, V with dim U = a - r1,
// dim V = b - r2 and u^T M v = 0 for all u in U, v in V.  Feasible only for
// a, b <= 3 and q <= 3.
int pr_exact_d1(const FormMatrix& M);

}  // namespace mlrank

#endif
