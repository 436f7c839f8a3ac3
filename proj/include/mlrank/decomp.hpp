#ifndef MLRANK_DECOMP_HPP
#define MLRANK_DECOMP_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mlrank/ranks.hpp"
#include "mlrank/rational.hpp"
#include "mlrank/schur.hpp"

namespace mlrank {

// C(d, q) = 2^d (q-1)^d / ((2^d - 1)(q-1)^d - (2^d - 2) q^d), the factor by
// which the iterated Schur decomposition can exceed the commutative rank,
// valid when the denominator is positive.  q = 0 encodes an infinite field,
// where the constant is 2^d.
struct BoundReport {
  int d = 0;
  int64_t q = 0;
  bool valid = false;
  Rational C;
  int64_t denominator = 0;
};

BoundReport bound_constant(int d, int64_t q);

struct IterationRecord {
  uint64_t point_code = 0;
  std::vector<int> rows, cols;
  int r = 0;
  int cr_before = 0;
  int cr_after = 0;
  bool exhaustive_search = true;
  int extension_degree = 1;  // 1 = worked in the base field
};

struct PartitionDecomposition {
  FieldPtr F;
  int a = 0, b = 0, d = 0, n = 1;
  std::vector<RankOneTerm> terms;
  std::vector<IterationRecord> log;
};

FormMatrix decomposition_value(const PartitionDecomposition& D);

struct DecomposeOptions {
  bool allow_extension = false;
  uint64_t point_budget = 4096;  // exhaustive point search iff q^{dn} <= budget
  int sample_count = 4096;       // draws when sampling
  uint64_t seed = 0;
  bool validate = true;          // per-iteration term/rank bound checks
};

// Iterated differential Schur complementation: each round evaluates at a
// rank-maximizing point, splits off at most 2^d r outer products, and
// recurses on the extracted remainder, whose commutative rank must strictly
// drop.  When the bound constant is invalid over the base field and
// extensions are allowed, the matrix is decomposed over the smallest
// extension with a valid constant and the result is transferred back, at the
// cost of a factor equal to the extension degree.
PartitionDecomposition pr_decompose(const FormMatrix& M, const DecomposeOptions& opts = {});

struct D1Decomposition {
  ScalarMatrix P, Q;  // invertible; P M Q has a zero bottom-right block
  int r1 = 0, r2 = 0; // zero block is (a - r1) x (b - r2); r1 + r2 <= 2 CR(M)
  PartitionDecomposition D;
};

// Specialized d = 1 algorithm: normalize a nonvanishing point to e_1, split
// the matrix as 2r outer products (r rows, r columns) plus a smaller block,
// and recurse.  Produces the compression normal form alongside the terms.
D1Decomposition pr_decompose_d1(const FormMatrix& M);

// Transfer a decomposition over the extension field down to the base field:
// every term splits into at most `degree` base-field terms through the basis
// decomposition of u and the projection of v.  The decomposed matrix must
// have all coefficients in the embedded base field.
PartitionDecomposition lift_project(const PartitionDecomposition& DK,
                                    const ExtensionMap& ext);

struct VerifyReport {
  bool equal = false;
  int term_count = 0;
  std::map<uint32_t, int> per_subset;
  bool cr_known = false;
  int cr = 0;
  BoundReport bound;
  bool within_bound = false;  // term_count <= C(d,q) * CR, when both known
};

VerifyReport verify(const FormMatrix& M, const PartitionDecomposition& D);

// sum over S != [d] (including S = {}) of CR(M[p_S]) - r, plus the
// S = [d] term rank M(p) - r: the certified ceiling for CR of the remainder
// of diff_schur(M, rows, cols, p) with |rows| = r
int schur_rank_ceiling(const FormMatrix& M, const Point& p, int r);

}  // namespace mlrank

#endif
