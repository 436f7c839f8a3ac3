#include "mlrank/tensor3.hpp"

#include <algorithm>
#include <cmath>

#include "mlrank/errors.hpp"

namespace mlrank {

Tensor3 make_tensor(MultilinearForm f) {
  require(f.blocks() == std::vector<int>{1, 2, 3}, "tensor must live on blocks {1,2,3}");
  return Tensor3{std::move(f)};
}

FormMatrix flatten(const Tensor3& T) {
  int n = T.n();
  FormMatrix M(T.field(), 1, n, n, n);
  // collect, per (j, k), the linear form in x_1
  std::vector<MultilinearForm> cells(size_t(n) * n, MultilinearForm(T.field(), {1}, n));
  for (const auto& [idx, c] : T.f.terms()) {
    int i1 = idx[0], j = idx[1], k = idx[2];
    cells[size_t(j - 1) * n + (k - 1)].add_term({(int32_t)i1}, c);
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) M.set(j, k, cells[size_t(j) * n + k]);
  return M;
}

Tensor3 unflatten(const FormMatrix& M) {
  require(M.d() == 1 && M.rows() == M.n() && M.cols() == M.n(),
          "expected an n x n matrix of linear forms");
  MultilinearForm f(M.field(), {1, 2, 3}, M.n());
  for (int j = 0; j < M.rows(); ++j)
    for (int k = 0; k < M.cols(); ++k)
      for (const auto& [idx, c] : M.at(j, k).terms())
        f.add_term({idx[0], (int32_t)j + 1, (int32_t)k + 1}, c);
  return Tensor3{std::move(f)};
}

ARResult analytic_rank(const Tensor3& T, uint64_t budget) {
  const FieldPtr& F = T.field();
  int n = T.n();
  int64_t q = F->q();
  uint64_t pairs = num_points(F, 2, n, budget);

  // direct: count pairs (x_1, x_2) killing the whole x_3 slice
  int64_t zero_pairs = 0;
  for (uint64_t code = 0; code < pairs; ++code) {
    Point p12 = point_from_code(F, 2, n, code);
    Assignment sub;
    sub[1] = p12[0];
    sub[2] = p12[1];
    if (partial_eval(T.f, sub).is_zero()) ++zero_pairs;
  }
  Rational direct(zero_pairs, (int64_t)pairs);

  // rank-based: bias = E_{x_1} q^{-rank of the flattening at x_1}
  FormMatrix hat = flatten(T);
  uint64_t singles = num_points(F, 1, n, budget);
  int64_t weighted = 0;  // sum over x_1 of q^{n - rank}
  for (uint64_t code = 0; code < singles; ++code) {
    Point p1 = point_from_code(F, 1, n, code);
    int r = scalar_rank(eval_matrix(hat, p1)).rank;
    int64_t w = 1;
    for (int i = 0; i < n - r; ++i) w *= q;
    weighted += w;
  }
  Rational viarank(weighted, (int64_t)pairs);

  check_internal(direct == viarank, "bias cross-check failed");
  ARResult out;
  out.bias = direct;
  out.ar = -std::log(out.bias.to_double()) / std::log((double)q);
  return out;
}

namespace {

// exact comparison  a*E + codim <= (a+1) * (-log_q bias):
//   q^{ad*ed*(a*E + codim)} <= bias^{-(an+ad)*ed}
bool certificate_holds(const Rational& a, const Rational& E, int codim,
                       const Rational& bias, int64_t q) {
  int64_t an = a.num(), ad = a.den();
  int64_t en = E.num(), ed = E.den();
  int64_t lhs_exp = an * en + (int64_t)codim * ad * ed;
  check_internal(lhs_exp >= 0, "negative certificate exponent");
  uint64_t rhs_exp = (uint64_t)((an + ad) * ed);
  BigUInt lhs = BigUInt::pow((uint64_t)q, (uint64_t)lhs_exp) *
                BigUInt::pow((uint64_t)bias.num(), rhs_exp);
  BigUInt rhs = BigUInt::pow((uint64_t)bias.den(), rhs_exp);
  return lhs <= rhs;
}

}  // namespace

SubspaceResult find_subspace(const Tensor3& T, const Rational& a, uint64_t budget) {
  const FieldPtr& F = T.field();
  int n = T.n();
  require(a >= Rational(0), "weight must be nonnegative");
  num_points(F, 2, n, budget);  // enumeration guard
  ARResult ar = analytic_rank(T, budget);
  FormMatrix hat = flatten(T);

  // B(x, y0): the k-th coordinate is sum_j m_{jk}(x) (y0)_j, a linear map in
  // x with matrix G[k][i] = sum_j coeff(m_{jk}, x_{1,i}) (y0)_j
  uint64_t singles = num_points(F, 1, n, budget);
  std::optional<SubspaceResult> best;
  Rational best_objective(0);
  for (uint64_t code = 0; code < singles; ++code) {
    VecF y0 = point_from_code(F, 1, n, code)[0];
    ScalarMatrix G(F, n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        FieldElem acc = F->zero();
        for (int j = 0; j < n; ++j) {
          if (y0[j].is_zero()) continue;
          acc = acc + hat.at(j, k).coeff({(int32_t)i + 1}) * y0[j];
        }
        G.set(k, i, acc);
      }
    auto basis = kernel_basis(G);
    int dim = (int)basis.size();
    int codim = n - dim;
    // E over U by enumerating coefficient tuples
    int64_t members = 1;
    for (int i = 0; i < dim; ++i) members *= F->q();
    int64_t sum = 0;
    for (int64_t cc = 0; cc < members; ++cc) {
      VecF x(n, F->zero());
      int64_t c = cc;
      for (const auto& bvec : basis) {
        FieldElem coef = F->from_int(c % F->q());
        c /= F->q();
        if (coef.is_zero()) continue;
        for (int i = 0; i < n; ++i) x[i] = x[i] + coef * bvec[i];
      }
      sum += scalar_rank(eval_matrix(hat, {x})).rank;
    }
    Rational E(sum, members);
    Rational objective = a * E + Rational(codim);
    if (!best || objective < best_objective) {
      SubspaceResult cand;
      cand.y0 = y0;
      cand.U_basis = basis;
      cand.codim = codim;
      cand.avg_rank_U = E;
      best = std::move(cand);
      best_objective = objective;
    }
  }
  check_internal(best.has_value(), "empty candidate space");
  best->certificate = certificate_holds(a, best->avg_rank_U, best->codim, ar.bias,
                                        F->q());
  return *best;
}

Tensor3 slice_value(const SliceDecomposition& D, const FieldPtr& F, int n) {
  MultilinearForm acc(F, {1, 2, 3}, n);
  for (const auto& t : D.terms) acc = acc + mul_disjoint(t.lin, t.bil);
  return Tensor3{std::move(acc)};
}

bool slice_count_within_bound(int count, const Rational& bias, int64_t q) {
  // count <= (3q-1)/(q-1) * AR  <=>  q^{count (q-1)} * num^{3q-1} <= den^{3q-1}
  BigUInt lhs = BigUInt::pow((uint64_t)q, (uint64_t)count * (uint64_t)(q - 1)) *
                BigUInt::pow((uint64_t)bias.num(), (uint64_t)(3 * q - 1));
  BigUInt rhs = BigUInt::pow((uint64_t)bias.den(), (uint64_t)(3 * q - 1));
  return lhs <= rhs;
}

bool ar_at_most(int count, const Rational& bias, int64_t q) {
  // AR <= count  <=>  bias >= q^{-count}
  BigUInt lhs = BigUInt::pow((uint64_t)bias.num(), 1) * BigUInt::pow((uint64_t)q, (uint64_t)count);
  BigUInt rhs(uint64_t(bias.den()));
  return rhs <= lhs;
}

SliceDecomposition slice_decompose(const Tensor3& T, std::optional<Rational> a_override,
                                   uint64_t budget) {
  const FieldPtr& F = T.field();
  int n = T.n();
  int64_t q = F->q();
  SliceDecomposition out;
  ARResult ar = analytic_rank(T, budget);
  out.bias = ar.bias;
  if (T.f.is_zero()) return out;

  Rational a = a_override ? *a_override : Rational(2 * q, q - 1);  // 2 / (1 - 1/q)
  SubspaceResult sub = find_subspace(T, a, budget);
  int dim = (int)sub.U_basis.size();

  // invertible L whose first dim columns span U: restriction to U becomes
  // "last n-dim primed coordinates are zero"
  ScalarMatrix L(F, n, n);
  {
    std::vector<VecF> cols = sub.U_basis;
    for (int j = 0; j < n && (int)cols.size() < n; ++j) {
      VecF e(n, F->zero());
      e[j] = F->one();
      cols.push_back(e);
      ScalarMatrix test(F, n, (int)cols.size());
      for (int i = 0; i < n; ++i)
        for (size_t c = 0; c < cols.size(); ++c) test.set(i, (int)c, cols[c][i]);
      if (scalar_rank(test).rank < (int)cols.size()) cols.pop_back();
    }
    check_internal((int)cols.size() == n, "could not extend subspace basis");
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) L.set(i, c, cols[c][i]);
  }
  ScalarMatrix Linv = scalar_inverse(L);
  MultilinearForm Tp = substitute_linear(T.f, 1, L);  // T'(x') = T(L x')

  // peel slot-1 coordinates outside U: T' = T'_U + sum_{j > dim} x'_{1,j} C_j
  MultilinearForm TU(F, {1, 2, 3}, n);
  std::vector<MultilinearForm> peel(n, MultilinearForm(F, {2, 3}, n));
  for (const auto& [idx, c] : Tp.terms()) {
    if (idx[0] <= dim)
      TU.add_term(idx, c);
    else
      peel[idx[0] - 1].add_term({idx[1], idx[2]}, c);
  }
  for (int j = dim; j < n; ++j) {
    if (peel[j].is_zero()) continue;
    SliceTerm t;
    t.slot = 1;
    // x'_{1,j+1} back in original coordinates: row j+1 of L^{-1}
    t.lin = MultilinearForm(F, {1}, n);
    for (int i = 0; i < n; ++i) {
      if (Linv.at(j, i).is_zero()) continue;
      t.lin.add_term({(int32_t)i + 1}, Linv.at(j, i));
    }
    t.bil = peel[j];
    out.terms.push_back(std::move(t));
  }

  // the restricted flattening decomposes with the d = 1 engine; its terms
  // become slot-2 / slot-3 slices
  FormMatrix MU = flatten(Tensor3{TU});
  D1Decomposition d1 = pr_decompose_d1(MU);
  for (const auto& term : d1.D.terms) {
    SliceTerm t;
    if (term.subset_mask == 0) {
      // scalar u, linear-form v: linear in slot 2 times bilinear in (1,3)
      t.slot = 2;
      t.lin = MultilinearForm(F, {2}, n);
      for (int j = 0; j < n; ++j) {
        FieldElem c = term.u[j].scalar_value();
        if (!c.is_zero()) t.lin.add_term({(int32_t)j + 1}, c);
      }
      t.bil = MultilinearForm(F, {1, 3}, n);
      for (int k = 0; k < n; ++k)
        for (const auto& [idx, c] : term.v[k].terms())
          t.bil.add_term({idx[0], (int32_t)k + 1}, c);
    } else {
      // linear-form u, scalar v: bilinear in (1,2) times linear in slot 3
      t.slot = 3;
      t.lin = MultilinearForm(F, {3}, n);
      for (int k = 0; k < n; ++k) {
        FieldElem c = term.v[k].scalar_value();
        if (!c.is_zero()) t.lin.add_term({(int32_t)k + 1}, c);
      }
      t.bil = MultilinearForm(F, {1, 2}, n);
      for (int j = 0; j < n; ++j)
        for (const auto& [idx, c] : term.u[j].terms())
          t.bil.add_term({idx[0], (int32_t)j + 1}, c);
    }
    // back to original slot-1 coordinates
    if (t.slot == 2 || t.slot == 3) t.bil = substitute_linear(t.bil, 1, Linv);
    out.terms.push_back(std::move(t));
  }

  check_internal(slice_value(out, F, n).f == T.f, "slice decomposition mismatch");
  if (!a_override)
    check_internal(slice_count_within_bound((int)out.terms.size(), out.bias, q),
                   "slice count violates the analytic-rank bound");
  return out;
}

}  // namespace mlrank
