#include "mlrank/mlmatrix.hpp"

#include <algorithm>
#include <numeric>

#include "mlrank/errors.hpp"

namespace mlrank {

// ---------------------------------------------------------------------------
// ScalarMatrix

ScalarMatrix::ScalarMatrix(FieldPtr F, int rows, int cols)
    : F_(std::move(F)), a_(rows), b_(cols) {
  require(F_ != nullptr, "matrix without field context");
  require(a_ >= 0 && b_ >= 0, "negative dimensions");
  d_.assign(size_t(a_) * b_, F_->zero());
}

ScalarMatrix ScalarMatrix::identity(FieldPtr F, int n) {
  ScalarMatrix I(F, n, n);
  for (int i = 0; i < n; ++i) I.set(i, i, F->one());
  return I;
}

const FieldElem& ScalarMatrix::at(int i, int j) const {
  require(i >= 0 && i < a_ && j >= 0 && j < b_, "matrix index out of range");
  return d_[size_t(i) * b_ + j];
}

void ScalarMatrix::set(int i, int j, const FieldElem& v) {
  require(i >= 0 && i < a_ && j >= 0 && j < b_, "matrix index out of range");
  require(same_field(v.field(), F_), "entry from wrong field");
  d_[size_t(i) * b_ + j] = v;
}

bool ScalarMatrix::is_zero() const {
  for (const auto& v : d_)
    if (!v.is_zero()) return false;
  return true;
}

ScalarMatrix operator*(const ScalarMatrix& A, const ScalarMatrix& B) {
  require(same_field(A.F_, B.F_), "field context mismatch");
  require(A.b_ == B.a_, "inner dimensions disagree");
  ScalarMatrix R(A.F_, A.a_, B.b_);
  for (int i = 0; i < A.a_; ++i)
    for (int k = 0; k < A.b_; ++k) {
      const FieldElem& a = A.at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < B.b_; ++j)
        R.set(i, j, R.at(i, j) + a * B.at(k, j));
    }
  return R;
}

ScalarMatrix operator+(const ScalarMatrix& A, const ScalarMatrix& B) {
  require(same_field(A.F_, B.F_) && A.a_ == B.a_ && A.b_ == B.b_, "shape mismatch");
  ScalarMatrix R(A.F_, A.a_, A.b_);
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j) R.set(i, j, A.at(i, j) + B.at(i, j));
  return R;
}

ScalarMatrix operator-(const ScalarMatrix& A, const ScalarMatrix& B) {
  require(same_field(A.F_, B.F_) && A.a_ == B.a_ && A.b_ == B.b_, "shape mismatch");
  ScalarMatrix R(A.F_, A.a_, A.b_);
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j) R.set(i, j, A.at(i, j) - B.at(i, j));
  return R;
}

bool operator==(const ScalarMatrix& A, const ScalarMatrix& B) {
  if (!same_field(A.F_, B.F_) || A.a_ != B.a_ || A.b_ != B.b_) return false;
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j)
      if (A.at(i, j) != B.at(i, j)) return false;
  return true;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix R(F_, b_, a_);
  for (int i = 0; i < a_; ++i)
    for (int j = 0; j < b_; ++j) R.set(j, i, at(i, j));
  return R;
}

RankInfo scalar_rank(const ScalarMatrix& A) {
  int a = A.rows(), b = A.cols();
  ScalarMatrix W = A;
  std::vector<bool> row_used(a, false), col_used(b, false);
  RankInfo info;
  for (;;) {
    int pi = -1, pj = -1;
    for (int i = 0; i < a && pi < 0; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < b; ++j) {
        if (col_used[j]) continue;
        if (!W.at(i, j).is_zero()) { pi = i; pj = j; break; }
      }
    }
    if (pi < 0) break;
    row_used[pi] = true;
    col_used[pj] = true;
    info.pivot_rows.push_back(pi);
    info.pivot_cols.push_back(pj);
    ++info.rank;
    FieldElem inv = W.at(pi, pj).inv();
    for (int i = 0; i < a; ++i) {
      if (row_used[i] || W.at(i, pj).is_zero()) continue;
      FieldElem f = W.at(i, pj) * inv;
      for (int j = 0; j < b; ++j)
        if (!col_used[j] || j == pj) W.set(i, j, W.at(i, j) - f * W.at(pi, j));
    }
  }
  return info;
}

ScalarMatrix scalar_inverse(const ScalarMatrix& A) {
  require(A.rows() == A.cols(), "inverse of a non-square matrix");
  int n = A.rows();
  ScalarMatrix W = A;
  ScalarMatrix I = ScalarMatrix::identity(A.field(), n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (!W.at(i, col).is_zero()) { pivot = i; break; }
    require(pivot >= 0, "matrix is singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        FieldElem t = W.at(col, j); W.set(col, j, W.at(pivot, j)); W.set(pivot, j, t);
        t = I.at(col, j); I.set(col, j, I.at(pivot, j)); I.set(pivot, j, t);
      }
    }
    FieldElem inv = W.at(col, col).inv();
    for (int j = 0; j < n; ++j) {
      W.set(col, j, W.at(col, j) * inv);
      I.set(col, j, I.at(col, j) * inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || W.at(i, col).is_zero()) continue;
      FieldElem f = W.at(i, col);
      for (int j = 0; j < n; ++j) {
        W.set(i, j, W.at(i, j) - f * W.at(col, j));
        I.set(i, j, I.at(i, j) - f * I.at(col, j));
      }
    }
  }
  return I;
}

ScalarMatrix submatrix(const ScalarMatrix& A, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  ScalarMatrix R(A.field(), (int)rows.size(), (int)cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) R.set((int)i, (int)j, A.at(rows[i], cols[j]));
  return R;
}

std::vector<VecF> kernel_basis(const ScalarMatrix& A) {
  // row-reduce, then read free columns
  int a = A.rows(), b = A.cols();
  ScalarMatrix W = A;
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int col = 0; col < b && r < a; ++col) {
    int pivot = -1;
    for (int i = r; i < a; ++i)
      if (!W.at(i, col).is_zero()) { pivot = i; break; }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < b; ++j) {
        FieldElem t = W.at(r, j); W.set(r, j, W.at(pivot, j)); W.set(pivot, j, t);
      }
    FieldElem inv = W.at(r, col).inv();
    for (int j = 0; j < b; ++j) W.set(r, j, W.at(r, j) * inv);
    for (int i = 0; i < a; ++i) {
      if (i == r || W.at(i, col).is_zero()) continue;
      FieldElem f = W.at(i, col);
      for (int j = 0; j < b; ++j) W.set(i, j, W.at(i, j) - f * W.at(r, j));
    }
    pivot_col_of_row.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(b, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<VecF> basis;
  for (int free = 0; free < b; ++free) {
    if (is_pivot[free]) continue;
    VecF v(b, A.field()->zero());
    v[free] = A.field()->one();
    for (int row = 0; row < r; ++row)
      v[pivot_col_of_row[row]] = -W.at(row, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// FormMatrix

FormMatrix::FormMatrix(FieldPtr F, int d, int n, int rows, int cols)
    : F_(std::move(F)), d_(d), n_(n), a_(rows), b_(cols) {
  require(F_ != nullptr, "matrix without field context");
  require(d_ >= 0 && n_ >= 1 && a_ >= 0 && b_ >= 0, "bad dimensions");
  std::vector<int> blocks(d_);
  std::iota(blocks.begin(), blocks.end(), 1);
  e_.assign(size_t(a_) * b_, MultilinearForm(F_, blocks, n_));
}

const MultilinearForm& FormMatrix::at(int i, int j) const {
  require(i >= 0 && i < a_ && j >= 0 && j < b_, "matrix index out of range");
  return e_[size_t(i) * b_ + j];
}

void FormMatrix::set(int i, int j, MultilinearForm f) {
  require(i >= 0 && i < a_ && j >= 0 && j < b_, "matrix index out of range");
  require(same_field(f.field(), F_), "entry from wrong field");
  require((int)f.blocks().size() == d_ &&
              (d_ == 0 || (f.blocks().front() == 1 && f.blocks().back() == d_)),
          "entry must live on blocks 1..d");
  require(f.n() == n_, "entry with wrong n");
  e_[size_t(i) * b_ + j] = std::move(f);
}

bool FormMatrix::is_zero() const {
  for (const auto& f : e_)
    if (!f.is_zero()) return false;
  return true;
}

FormMatrix operator+(const FormMatrix& A, const FormMatrix& B) {
  require(same_field(A.F_, B.F_) && A.d_ == B.d_ && A.n_ == B.n_ && A.a_ == B.a_ &&
              A.b_ == B.b_,
          "form matrix shape mismatch");
  FormMatrix R(A.F_, A.d_, A.n_, A.a_, A.b_);
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j) R.set(i, j, A.at(i, j) + B.at(i, j));
  return R;
}

FormMatrix operator-(const FormMatrix& A, const FormMatrix& B) {
  require(same_field(A.F_, B.F_) && A.d_ == B.d_ && A.n_ == B.n_ && A.a_ == B.a_ &&
              A.b_ == B.b_,
          "form matrix shape mismatch");
  FormMatrix R(A.F_, A.d_, A.n_, A.a_, A.b_);
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j) R.set(i, j, A.at(i, j) - B.at(i, j));
  return R;
}

bool operator==(const FormMatrix& A, const FormMatrix& B) {
  if (!same_field(A.F_, B.F_) || A.d_ != B.d_ || A.n_ != B.n_ || A.a_ != B.a_ ||
      A.b_ != B.b_)
    return false;
  for (int i = 0; i < A.a_; ++i)
    for (int j = 0; j < A.b_; ++j)
      if (A.at(i, j) != B.at(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// points

uint64_t num_points(const FieldPtr& F, int d, int n, uint64_t cap) {
  uint64_t total = 1;
  uint64_t q = (uint64_t)F->q();
  for (int i = 0; i < d * n; ++i) {
    if (total > cap / q + 1) throw budget_error("point space exceeds budget");
    total *= q;
    if (total > cap) throw budget_error("point space exceeds budget");
  }
  return total;
}

Point point_from_code(const FieldPtr& F, int d, int n, uint64_t code) {
  uint64_t q = (uint64_t)F->q();
  Point p(d, VecF(n, F->zero()));
  for (int b = d - 1; b >= 0; --b)
    for (int j = n - 1; j >= 0; --j) {
      p[b][j] = F->from_int(int64_t(code % q));
      code /= q;
    }
  return p;
}

uint64_t point_code(const FieldPtr& F, const Point& p) {
  uint64_t q = (uint64_t)F->q(), code = 0;
  for (const auto& vec : p)
    for (const auto& v : vec) code = code * q + (uint64_t)F->code(v);
  return code;
}

Assignment assignment_for_blocks(const Point& p, const std::vector<int>& blocks) {
  Assignment a;
  for (int b : blocks) {
    require(b >= 1 && b <= (int)p.size(), "block label outside the point");
    a[b] = p[b - 1];
  }
  return a;
}

Assignment assignment_full(const Point& p) {
  Assignment a;
  for (size_t b = 0; b < p.size(); ++b) a[(int)b + 1] = p[b];
  return a;
}

ScalarMatrix eval_matrix(const FormMatrix& M, const Point& p) {
  require((int)p.size() == M.d(), "point has wrong number of blocks");
  for (const auto& vec : p) require((int)vec.size() == M.n(), "point vector has wrong length");
  Assignment a = assignment_full(p);
  ScalarMatrix R(M.field(), M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      if (M.at(i, j).is_zero()) continue;
      R.set(i, j, eval(M.at(i, j), a));
    }
  return R;
}

std::pair<std::vector<int>, std::vector<int>> find_invertible_submatrix(
    const FormMatrix& M, const Point& p, int r) {
  require(r >= 0, "negative rank request");
  RankInfo info = scalar_rank(eval_matrix(M, p));
  require(info.rank >= r, "evaluation rank below requested size");
  std::vector<int> rows(info.pivot_rows.begin(), info.pivot_rows.begin() + r);
  std::vector<int> cols(info.pivot_cols.begin(), info.pivot_cols.begin() + r);
  return {rows, cols};
}

FormMatrix partial_eval_matrix(const FormMatrix& M, const Assignment& sub) {
  std::vector<int> remaining;
  for (int b = 1; b <= M.d(); ++b)
    if (!sub.count(b)) remaining.push_back(b);
  for (const auto& [b, vec] : sub)
    require(b >= 1 && b <= M.d(), "assignment names block outside 1..d");
  std::map<int, int> rename;
  for (size_t i = 0; i < remaining.size(); ++i) rename[remaining[i]] = (int)i + 1;
  FormMatrix R(M.field(), (int)remaining.size(), M.n(), M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      MultilinearForm f = partial_eval(M.at(i, j), sub);
      R.set(i, j, relabel_blocks(f, rename));
    }
  return R;
}

MultilinearForm substitute_linear(const MultilinearForm& f, int block,
                                  const ScalarMatrix& L) {
  require(L.rows() == L.cols() && L.rows() == f.n(), "substitution matrix must be n x n");
  require(scalar_rank(L).rank == L.rows(), "substitution matrix is singular");
  std::vector<VecF> rows(L.rows(), VecF(L.cols(), L.field()->zero()));
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) rows[i][j] = L.at(i, j);
  return substitute_block_raw(f, block, rows);
}

FormMatrix substitute_linear(const FormMatrix& M, int block, const ScalarMatrix& L) {
  require(block >= 1 && block <= M.d(), "block label outside 1..d");
  require(L.rows() == L.cols() && L.rows() == M.n(), "substitution matrix must be n x n");
  require(scalar_rank(L).rank == L.rows(), "substitution matrix is singular");
  std::vector<VecF> rows(L.rows(), VecF(L.cols(), L.field()->zero()));
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) rows[i][j] = L.at(i, j);
  FormMatrix R(M.field(), M.d(), M.n(), M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      if (M.at(i, j).is_zero()) continue;
      R.set(i, j, substitute_block_raw(M.at(i, j), block, rows));
    }
  return R;
}

MultilinearForm embed_form(const MultilinearForm& f, const ExtensionMap& ext) {
  MultilinearForm r(ext.super(), f.blocks(), f.n());
  for (const auto& [idx, c] : f.terms()) r.add_term(idx, ext.embed(c));
  return r;
}

FormMatrix embed_matrix(const FormMatrix& M, const ExtensionMap& ext) {
  FormMatrix R(ext.super(), M.d(), M.n(), M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) R.set(i, j, embed_form(M.at(i, j), ext));
  return R;
}

FormMatrix mul_scalar_left(const ScalarMatrix& P, const FormMatrix& M) {
  require(P.cols() == M.rows(), "inner dimensions disagree");
  FormMatrix R(M.field(), M.d(), M.n(), P.rows(), M.cols());
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      MultilinearForm acc = R.at(i, j);
      for (int k = 0; k < M.rows(); ++k) {
        if (P.at(i, k).is_zero()) continue;
        acc = acc + M.at(k, j).scale(P.at(i, k));
      }
      R.set(i, j, std::move(acc));
    }
  return R;
}

FormMatrix mul_scalar_right(const FormMatrix& M, const ScalarMatrix& Q) {
  require(M.cols() == Q.rows(), "inner dimensions disagree");
  FormMatrix R(M.field(), M.d(), M.n(), M.rows(), Q.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < Q.cols(); ++j) {
      MultilinearForm acc = R.at(i, j);
      for (int k = 0; k < M.cols(); ++k) {
        if (Q.at(k, j).is_zero()) continue;
        acc = acc + M.at(i, k).scale(Q.at(k, j));
      }
      R.set(i, j, std::move(acc));
    }
  return R;
}

std::vector<MultilinearForm> apply_scalar(const ScalarMatrix& P,
                                          const std::vector<MultilinearForm>& v) {
  require(P.cols() == (int)v.size(), "dimension mismatch");
  if (P.rows() == 0) return {};
  require(!v.empty(), "cannot infer form shape from an empty vector");
  std::vector<MultilinearForm> out;
  out.reserve(P.rows());
  for (int i = 0; i < P.rows(); ++i) {
    MultilinearForm acc(v[0].field(), v[0].blocks(), v[0].n());
    for (int k = 0; k < P.cols(); ++k) {
      if (P.at(i, k).is_zero()) continue;
      acc = acc + v[k].scale(P.at(i, k));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

ScalarMatrix complete_basis(const VecF& v) {
  require(!v.empty(), "empty vector");
  const FieldPtr& F = v[0].field();
  int n = (int)v.size();
  std::vector<VecF> cols;
  cols.push_back(v);
  for (int j = 0; j < n && (int)cols.size() < n; ++j) {
    VecF e(n, F->zero());
    e[j] = F->one();
    cols.push_back(e);
    ScalarMatrix test(F, n, (int)cols.size());
    for (int i = 0; i < n; ++i)
      for (size_t c = 0; c < cols.size(); ++c) test.set(i, (int)c, cols[c][i]);
    if (scalar_rank(test).rank < (int)cols.size()) cols.pop_back();
  }
  require((int)cols.size() == n, "vector is zero; cannot complete to a basis");
  ScalarMatrix L(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) L.set(i, c, cols[c][i]);
  return L;
}

}  // namespace mlrank
