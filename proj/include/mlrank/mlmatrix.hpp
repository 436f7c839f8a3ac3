#ifndef MLRANK_MLMATRIX_HPP
#define MLRANK_MLMATRIX_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mlrank/mform.hpp"

namespace mlrank {

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(FieldPtr F, int rows, int cols);  // zero
  static ScalarMatrix identity(FieldPtr F, int n);

  const FieldPtr& field() const { return F_; }
  int rows() const { return a_; }
  int cols() const { return b_; }
  const FieldElem& at(int i, int j) const;
  void set(int i, int j, const FieldElem& v);
  bool is_zero() const;

  friend ScalarMatrix operator*(const ScalarMatrix& A, const ScalarMatrix& B);
  friend ScalarMatrix operator+(const ScalarMatrix& A, const ScalarMatrix& B);
  friend ScalarMatrix operator-(const ScalarMatrix& A, const ScalarMatrix& B);
  friend bool operator==(const ScalarMatrix& A, const ScalarMatrix& B);
  friend bool operator!=(const ScalarMatrix& A, const ScalarMatrix& B) { return !(A == B); }
  ScalarMatrix transpose() const;

 private:
  FieldPtr F_;
  int a_ = 0, b_ = 0;
  std::vector<FieldElem> d_;
};

struct RankInfo {
  int rank = 0;
  std::vector<int> pivot_rows;  // 0-based, in pivot order
  std::vector<int> pivot_cols;
};

// Gaussian elimination with a deterministic pivot rule: at each step the
// pivot is the first nonzero entry in row-major scan over unused rows and
// columns.  The square submatrix on any prefix of the pivot sets is
// invertible.
RankInfo scalar_rank(const ScalarMatrix& A);
ScalarMatrix scalar_inverse(const ScalarMatrix& A);
ScalarMatrix submatrix(const ScalarMatrix& A, const std::vector<int>& rows,
                       const std::vector<int>& cols);
// basis of { x : A x = 0 }
std::vector<VecF> kernel_basis(const ScalarMatrix& A);

// a x b matrix whose entries are multilinear forms on blocks 1..d (d = 0
// means scalar entries), uniform n variables per block
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(FieldPtr F, int d, int n, int rows, int cols);  // zero

  const FieldPtr& field() const { return F_; }
  int d() const { return d_; }
  int n() const { return n_; }
  int rows() const { return a_; }
  int cols() const { return b_; }
  const MultilinearForm& at(int i, int j) const;
  void set(int i, int j, MultilinearForm f);
  bool is_zero() const;

  friend FormMatrix operator+(const FormMatrix& A, const FormMatrix& B);
  friend FormMatrix operator-(const FormMatrix& A, const FormMatrix& B);
  friend bool operator==(const FormMatrix& A, const FormMatrix& B);
  friend bool operator!=(const FormMatrix& A, const FormMatrix& B) { return !(A == B); }

 private:
  FieldPtr F_;
  int d_ = 0, n_ = 1, a_ = 0, b_ = 0;
  std::vector<MultilinearForm> e_;
};

// evaluation point: one vector of length n per block 1..d
using Point = std::vector<VecF>;

// q^{d*n}, guarded against overflow past `cap`
uint64_t num_points(const FieldPtr& F, int d, int n, uint64_t cap);
// code -> point, enumerating codes so that increasing code is lexicographic
// order on (block 1 coords, block 2 coords, ...), each coordinate by element
// code; the earliest coordinate is the most significant digit
Point point_from_code(const FieldPtr& F, int d, int n, uint64_t code);
uint64_t point_code(const FieldPtr& F, const Point& p);
Assignment assignment_for_blocks(const Point& p, const std::vector<int>& blocks);
Assignment assignment_full(const Point& p);

ScalarMatrix eval_matrix(const FormMatrix& M, const Point& p);

// index sets (size r) of an invertible r x r submatrix of M(p); the pivots of
// the deterministic elimination on M(p)
std::pair<std::vector<int>, std::vector<int>> find_invertible_submatrix(
    const FormMatrix& M, const Point& p, int r);

// substitute the named blocks and renumber the remaining ones to 1..d'
FormMatrix partial_eval_matrix(const FormMatrix& M, const Assignment& sub);

// x_b -> L x_b with invertible L
MultilinearForm substitute_linear(const MultilinearForm& f, int block, const ScalarMatrix& L);
FormMatrix substitute_linear(const FormMatrix& M, int block, const ScalarMatrix& L);

class ExtensionMap;
FormMatrix embed_matrix(const FormMatrix& M, const ExtensionMap& ext);
MultilinearForm embed_form(const MultilinearForm& f, const ExtensionMap& ext);

// scalar-matrix action on form matrices / form vectors
FormMatrix mul_scalar_left(const ScalarMatrix& P, const FormMatrix& M);
FormMatrix mul_scalar_right(const FormMatrix& M, const ScalarMatrix& Q);
std::vector<MultilinearForm> apply_scalar(const ScalarMatrix& P,
                                          const std::vector<MultilinearForm>& v);

// invertible matrix whose first column is v (completed greedily with
// standard basis vectors)
ScalarMatrix complete_basis(const VecF& v);

}  // namespace mlrank

#endif
