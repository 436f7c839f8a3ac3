#include "mlrank/schur.hpp"

#include <algorithm>

#include "mlrank/errors.hpp"

namespace mlrank {

namespace {

void check_index_sets(int a, int b, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  require(rows.size() == cols.size(), "pivot row and column sets differ in size");
  auto check = [](const std::vector<int>& v, int bound, const char* what) {
    std::vector<int> s = v;
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < s.size(); ++i) {
      require(s[i] >= 0 && s[i] < bound, std::string(what) + " index out of range");
      require(i == 0 || s[i] != s[i - 1], std::string(what) + " indices repeat");
    }
  };
  check(rows, a, "row");
  check(cols, b, "column");
}

std::vector<int> mask_blocks(uint32_t mask) {
  std::vector<int> blocks;
  for (int b = 1; mask; ++b, mask >>= 1)
    if (mask & 1) blocks.push_back(b);
  return blocks;
}

}  // namespace

FormMatrix outer_value(const RankOneTerm& t, const FieldPtr& F, int d, int n) {
  FormMatrix R(F, d, n, (int)t.u.size(), (int)t.v.size());
  for (size_t i = 0; i < t.u.size(); ++i) {
    if (t.u[i].is_zero()) continue;
    for (size_t j = 0; j < t.v.size(); ++j) {
      if (t.v[j].is_zero()) continue;
      R.set((int)i, (int)j, mul_disjoint(t.u[i], t.v[j]));
    }
  }
  return R;
}

FormMatrix terms_value(const std::vector<RankOneTerm>& terms, const FieldPtr& F, int d,
                       int n, int rows, int cols) {
  FormMatrix R(F, d, n, rows, cols);
  for (const auto& t : terms) {
    require((int)t.u.size() == rows && (int)t.v.size() == cols,
            "term dimensions disagree with the matrix");
    R = R + outer_value(t, F, d, n);
  }
  return R;
}

ScalarMatrix schur_scalar(const ScalarMatrix& M, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  check_index_sets(M.rows(), M.cols(), rows, cols);
  int r = (int)rows.size();
  ScalarMatrix R(M.field(), M.rows(), M.cols());
  if (r == 0) return M;
  ScalarMatrix A = submatrix(M, rows, cols);
  require(scalar_rank(A).rank == r, "pivot block is singular");
  ScalarMatrix Ainv = scalar_inverse(A);
  std::vector<bool> is_prow(M.rows(), false), is_pcol(M.cols(), false);
  for (int i : rows) is_prow[i] = true;
  for (int j : cols) is_pcol[j] = true;
  for (int i = 0; i < M.rows(); ++i) {
    if (is_prow[i]) continue;
    for (int j = 0; j < M.cols(); ++j) {
      if (is_pcol[j]) continue;
      FieldElem acc = M.at(i, j);
      for (int t = 0; t < r; ++t)
        for (int s = 0; s < r; ++s)
          acc = acc - M.at(i, cols[t]) * Ainv.at(t, s) * M.at(rows[s], j);
      R.set(i, j, acc);
    }
  }
  return R;
}

namespace {

using LocalVec = std::vector<LocalElem>;
using LocalMat = std::vector<LocalVec>;

LocalMat neumann_inverse(const LocalMat& A, const ScalarMatrix& Ap, const FieldPtr& F,
                         int d, int n, const Point& p) {
  int r = (int)A.size();
  ScalarMatrix ApInv = scalar_inverse(Ap);
  // N = Ap^{-1} (A - Ap); entries of N have no empty-subset component, so
  // N^{d+1} = 0 and (I + N)^{-1} = sum_{j<=d} (-N)^j exactly
  auto lc = [&](const FieldElem& c) { return LocalElem::constant(F, d, n, p, c); };
  LocalMat N(r, LocalVec(r, LocalElem(F, d, n, p)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      LocalElem acc(F, d, n, p);
      for (int t = 0; t < r; ++t) {
        LocalElem delta = A[t][j];
        delta.set_component(0, MultilinearForm(F, {}, n));
        acc = lr_add(acc, lr_mul(lc(ApInv.at(i, t)), delta));
      }
      N[i][j] = std::move(acc);
    }
  LocalMat series(r, LocalVec(r, LocalElem(F, d, n, p)));
  for (int i = 0; i < r; ++i) series[i][i] = lc(F->one());
  LocalMat power = series;
  for (int step = 1; step <= d; ++step) {
    LocalMat next(r, LocalVec(r, LocalElem(F, d, n, p)));
    bool nonzero = false;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        LocalElem acc(F, d, n, p);
        for (int t = 0; t < r; ++t) acc = lr_add(acc, lr_mul(power[i][t], lr_neg(N[t][j])));
        if (!acc.is_zero()) nonzero = true;
        next[i][j] = std::move(acc);
      }
    power = std::move(next);
    if (!nonzero) break;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) series[i][j] = lr_add(series[i][j], power[i][j]);
  }
  // A^{-1} = (I + N)^{-1} Ap^{-1}
  LocalMat out(r, LocalVec(r, LocalElem(F, d, n, p)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      LocalElem acc(F, d, n, p);
      for (int t = 0; t < r; ++t) acc = lr_add(acc, lr_mul(series[i][t], lc(ApInv.at(t, j))));
      out[i][j] = std::move(acc);
    }
  return out;
}

}  // namespace

DiffSchur diff_schur(const FormMatrix& M, const std::vector<int>& rows,
                     const std::vector<int>& cols, const Point& p) {
  check_index_sets(M.rows(), M.cols(), rows, cols);
  const FieldPtr& F = M.field();
  int d = M.d(), n = M.n();
  int a = M.rows(), b = M.cols(), r = (int)rows.size();
  require((int)p.size() == d, "point has wrong number of blocks");

  ScalarMatrix Mp = eval_matrix(M, p);
  ScalarMatrix Ap = submatrix(Mp, rows, cols);
  require(scalar_rank(Ap).rank == r, "pivot block is singular at the base point");

  DiffSchur out;
  out.schur_at_p = ScalarMatrix(F, a, b);
  if (r == 0) {
    out.remainder = M;
    out.schur_at_p = Mp;
    return out;
  }

  LocalMat L(a, LocalVec(b));
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) L[i][j] = expand(M.at(i, j), p);

  LocalMat A(r, LocalVec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A[i][j] = L[rows[i]][cols[j]];
  LocalMat Ainv = neumann_inverse(A, Ap, F, d, n, p);

  // u_i = column cols[i] of M over all rows; v_i = row i of A^{-1} (rows of M)
  LocalMat U(r, LocalVec(a));
  for (int i = 0; i < r; ++i)
    for (int row = 0; row < a; ++row) U[i][row] = L[row][cols[i]];
  LocalMat V(r, LocalVec(b));
  for (int i = 0; i < r; ++i)
    for (int col = 0; col < b; ++col) {
      LocalElem acc(F, d, n, p);
      for (int t = 0; t < r; ++t) acc = lr_add(acc, lr_mul(Ainv[i][t], L[rows[t]][col]));
      V[i][col] = std::move(acc);
    }

  // remainder in the local ring: M - sum_i u_i v_i; exactly zero on pivot
  // rows and columns
  std::vector<bool> is_prow(a, false), is_pcol(b, false);
  for (int i : rows) is_prow[i] = true;
  for (int j : cols) is_pcol[j] = true;
  out.remainder = FormMatrix(F, d, n, a, b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      LocalElem acc = L[i][j];
      for (int t = 0; t < r; ++t) acc = lr_sub(acc, lr_mul(U[t][i], V[t][j]));
      if (is_prow[i] || is_pcol[j]) {
        check_internal(acc.is_zero(), "Schur remainder not zero on pivot lines");
        continue;
      }
      out.remainder.set(i, j, approx_extract(acc));
      out.schur_at_p.set(i, j, acc.component(0).scalar_value());
    }

  // split each u_i v_i by subset: coefficient of t_{[d]} in the product is
  // the disjoint-union convolution sum_S u_{i,S} v_{i,[d]\S}
  uint32_t full = (d == 0) ? 0 : ((1u << d) - 1);
  for (int i = 0; i < r; ++i) {
    for (uint32_t mask = 0;; ++mask) {
      uint32_t comp = full & ~mask;
      RankOneTerm term;
      term.subset_mask = mask;
      term.u.reserve(a);
      term.v.reserve(b);
      bool u_nonzero = false, v_nonzero = false;
      for (int row = 0; row < a; ++row) {
        MultilinearForm f = U[i][row].component(mask);
        if (!f.is_zero()) u_nonzero = true;
        term.u.push_back(std::move(f));
      }
      for (int col = 0; col < b; ++col) {
        MultilinearForm f = V[i][col].component(comp);
        if (!f.is_zero()) v_nonzero = true;
        term.v.push_back(std::move(f));
      }
      if (u_nonzero && v_nonzero) out.terms.push_back(std::move(term));
      if (mask == full) break;
    }
  }
  check_internal((int64_t)out.terms.size() <= (int64_t)(full + 1) * r,
                 "term count exceeds 2^d r");
  return out;
}

}  // namespace mlrank
