#include "mlrank/polyops.hpp"

#include "mlrank/errors.hpp"

namespace mlrank {

std::optional<int> mult(const Poly& f, const VecF& p) {
  require((int)p.size() == f.nvars(), "point has wrong dimension");
  if (f.is_zero()) return std::nullopt;
  return f.shift(p).min_degree();
}

MultSZReport multsz_check(const Poly& f, const std::vector<FieldElem>& S) {
  require(!f.is_zero(), "the multiplicity inequality needs a nonzero polynomial");
  require(!S.empty(), "empty evaluation set");
  int n = f.nvars();
  int64_t s = (int64_t)S.size();
  int64_t total = 1;
  for (int i = 0; i < n; ++i) {
    require(total <= ((int64_t)1 << 30) / s, "point enumeration out of budget");
    total *= s;
  }
  MultSZReport rep;
  VecF p(n, f.field()->zero());
  for (int64_t code = 0; code < total; ++code) {
    int64_t c = code;
    for (int i = 0; i < n; ++i) { p[i] = S[c % s]; c /= s; }
    auto m = mult(f, p);
    rep.lhs += *m;
  }
  int64_t pw = 1;
  for (int i = 0; i + 1 < n; ++i) pw *= s;
  rep.rhs = (int64_t)*f.total_degree() * (n == 0 ? 0 : pw);
  if (n == 0) rep.rhs = 0;
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

MultSZReport multsz_check(const Poly& f) {
  const FieldPtr& F = f.field();
  std::vector<FieldElem> S;
  S.reserve((size_t)F->q());
  for (int64_t code = 0; code < F->q(); ++code) S.push_back(F->from_int(code));
  return multsz_check(f, S);
}

Poly det_poly(const std::vector<std::vector<Poly>>& M) {
  size_t m = M.size();
  require(m > 0, "determinant of an empty matrix");
  for (const auto& row : M) require(row.size() == m, "determinant of a non-square matrix");
  const FieldPtr& F = M[0][0].field();
  int nv = M[0][0].nvars();
  if (m == 1) return M[0][0];
  // cofactor expansion along the first row
  Poly acc(F, nv);
  std::vector<std::vector<Poly>> minor(m - 1, std::vector<Poly>(m - 1));
  for (size_t j = 0; j < m; ++j) {
    if (M[0][j].is_zero()) continue;
    for (size_t i = 1; i < m; ++i) {
      size_t cc = 0;
      for (size_t c = 0; c < m; ++c) {
        if (c == j) continue;
        minor[i - 1][cc++] = M[i][c];
      }
    }
    Poly term = M[0][j] * det_poly(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

std::vector<std::vector<Poly>> to_poly_matrix(const FormMatrix& M) {
  std::vector<std::vector<Poly>> P(M.rows(), std::vector<Poly>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) P[i][j] = form_to_poly(M.at(i, j), M.d(), M.n());
  return P;
}

Poly det_poly(const FormMatrix& M) {
  require(M.rows() == M.cols(), "determinant of a non-square matrix");
  require(M.rows() >= 1, "determinant of an empty matrix");
  return det_poly(to_poly_matrix(M));
}

std::vector<std::vector<Poly>> adjugate_poly(const std::vector<std::vector<Poly>>& M) {
  size_t m = M.size();
  require(m > 0, "adjugate of an empty matrix");
  for (const auto& row : M) require(row.size() == m, "adjugate of a non-square matrix");
  const FieldPtr& F = M[0][0].field();
  int nv = M[0][0].nvars();
  std::vector<std::vector<Poly>> adj(m, std::vector<Poly>(m, Poly(F, nv)));
  if (m == 1) {
    adj[0][0] = Poly::constant(F, nv, F->one());
    return adj;
  }
  std::vector<std::vector<Poly>> minor(m - 1, std::vector<Poly>(m - 1));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      size_t rr = 0;
      for (size_t r = 0; r < m; ++r) {
        if (r == i) continue;
        size_t cc = 0;
        for (size_t c = 0; c < m; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = M[r][c];
        }
        ++rr;
      }
      Poly cof = det_poly(minor);
      adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

}  // namespace mlrank
