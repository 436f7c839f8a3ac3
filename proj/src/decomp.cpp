#include "mlrank/decomp.hpp"

#include <algorithm>
#include <numeric>

#include "mlrank/errors.hpp"

namespace mlrank {

BoundReport bound_constant(int d, int64_t q) {
  require(d >= 0 && d < 31, "d out of range");
  BoundReport rep;
  rep.d = d;
  rep.q = q;
  int64_t two_d = (int64_t)1 << d;
  if (q == 0) {  // infinite field
    rep.valid = true;
    rep.C = Rational(two_d);
    rep.denominator = 1;
    return rep;
  }
  require(q >= 2, "q must be a prime power or 0 for infinite");
  __int128 qm1_d = 1, q_d = 1;
  for (int i = 0; i < d; ++i) { qm1_d *= (q - 1); q_d *= q; }
  __int128 den = (two_d - 1) * qm1_d - (two_d - 2) * q_d;
  check_internal(den > INT64_MIN && den < INT64_MAX, "bound denominator overflow");
  rep.denominator = (int64_t)den;
  if (den <= 0) {
    rep.valid = false;
    return rep;
  }
  __int128 num = two_d * qm1_d;
  check_internal(num < INT64_MAX, "bound numerator overflow");
  rep.valid = true;
  rep.C = Rational((int64_t)num, rep.denominator);
  return rep;
}

FormMatrix decomposition_value(const PartitionDecomposition& D) {
  return terms_value(D.terms, D.F, D.d, D.n, D.a, D.b);
}

int schur_rank_ceiling(const FormMatrix& M, const Point& p, int r) {
  int d = M.d();
  require(d < 31, "d out of range");
  int total = 0;
  uint32_t full = (d == 0) ? 0 : ((1u << d) - 1);
  for (uint32_t mask = 0;; ++mask) {
    // mask = substituted blocks
    int rank_s;
    if (mask == full) {
      rank_s = scalar_rank(eval_matrix(M, p)).rank;
    } else if (mask == 0) {
      rank_s = comm_rank_symbolic(M);
    } else {
      std::vector<int> blocks;
      for (int b = 1; b <= d; ++b)
        if (mask & (1u << (b - 1))) blocks.push_back(b);
      rank_s = comm_rank_symbolic(partial_eval_matrix(M, assignment_for_blocks(p, blocks)));
    }
    total += rank_s - r;
    if (mask == full) break;
  }
  return total;
}

namespace {

PartitionDecomposition decompose_base(const FormMatrix& M, const DecomposeOptions& opts,
                                      int extension_degree_for_log) {
  PartitionDecomposition D;
  D.F = M.field();
  D.a = M.rows();
  D.b = M.cols();
  D.d = M.d();
  D.n = M.n();

  FormMatrix cur = M;
  int k = comm_rank_symbolic(cur);
  while (k > 0) {
    bool exhaustive = true;
    MaxRankResult mr;
    try {
      mr = max_rank_exhaustive(cur, opts.point_budget);
    } catch (const budget_error&) {
      exhaustive = false;
      mr = max_rank_sampled(cur, opts.sample_count, opts.seed);
    }
    if (mr.rank == 0)
      throw budget_error("point search found no nonzero evaluation while CR > 0");
    int r = mr.rank;
    auto [rows, cols] = find_invertible_submatrix(cur, mr.argmax, r);
    DiffSchur ds = diff_schur(cur, rows, cols, mr.argmax);

    int k_next = comm_rank_symbolic(ds.remainder);
    if (opts.validate) {
      check_internal((int64_t)ds.terms.size() <= ((int64_t)1 << cur.d()) * r,
                     "emitted term count exceeds 2^d r");
      check_internal(k_next <= schur_rank_ceiling(cur, mr.argmax, r),
                     "remainder rank exceeds its certified ceiling");
    }
    IterationRecord rec;
    rec.point_code = point_code(cur.field(), mr.argmax);
    rec.rows = rows;
    rec.cols = cols;
    rec.r = r;
    rec.cr_before = k;
    rec.cr_after = k_next;
    rec.exhaustive_search = exhaustive;
    rec.extension_degree = extension_degree_for_log;
    D.log.push_back(rec);
    if (k_next >= k)
      throw budget_error("commutative rank did not decrease; extension disallowed");
    for (auto& t : ds.terms) D.terms.push_back(std::move(t));
    cur = std::move(ds.remainder);
    k = k_next;
  }
  if (opts.validate)
    check_internal(decomposition_value(D) == M, "decomposition does not reconstruct");
  return D;
}

int smallest_valid_extension(int d, const FieldPtr& F) {
  for (int e = 2; e * F->k() <= 20; ++e) {
    __int128 qe = 1;
    bool over = false;
    for (int i = 0; i < e; ++i) {
      qe *= F->q();
      if (qe > (int64_t)1 << 40) { over = true; break; }
    }
    if (over) break;
    if (bound_constant(d, (int64_t)qe).valid) return e;
  }
  throw budget_error("no feasible extension with a valid bound constant");
}

PartitionDecomposition decompose_via_extension(const FormMatrix& M,
                                               const DecomposeOptions& opts) {
  int e = smallest_valid_extension(M.d(), M.field());
  FieldPtr K = FieldCtx::make(M.field()->p(), M.field()->k() * e);
  ExtensionMap ext(M.field(), K);
  FormMatrix MK = embed_matrix(M, ext);
  DecomposeOptions sub = opts;
  sub.allow_extension = false;
  PartitionDecomposition DK = decompose_base(MK, sub, e);
  PartitionDecomposition D = lift_project(DK, ext);
  D.log = std::move(DK.log);
  if (opts.validate)
    check_internal(decomposition_value(D) == M, "transferred decomposition mismatch");
  return D;
}

}  // namespace

PartitionDecomposition pr_decompose(const FormMatrix& M, const DecomposeOptions& opts) {
  if (opts.allow_extension && !bound_constant(M.d(), M.field()->q()).valid)
    return decompose_via_extension(M, opts);
  try {
    return decompose_base(M, opts, 1);
  } catch (const budget_error&) {
    if (!opts.allow_extension) throw;
    return decompose_via_extension(M, opts);
  }
}

// ---------------------------------------------------------------------------
// d = 1 compression algorithm

namespace {

// P0 M(p) Q0 = (I_r 0; 0 0)
std::pair<ScalarMatrix, ScalarMatrix> normal_form_at(const ScalarMatrix& E, int r,
                                                     const RankInfo& info) {
  const FieldPtr& F = E.field();
  int a = E.rows(), b = E.cols();
  // permutations moving pivots to the leading positions
  std::vector<int> rperm = info.pivot_rows, cperm = info.pivot_cols;
  for (int i = 0; i < a; ++i)
    if (std::find(rperm.begin(), rperm.end(), i) == rperm.end()) rperm.push_back(i);
  for (int j = 0; j < b; ++j)
    if (std::find(cperm.begin(), cperm.end(), j) == cperm.end()) cperm.push_back(j);
  ScalarMatrix Pp(F, a, a), Qp(F, b, b);
  for (int i = 0; i < a; ++i) Pp.set(i, rperm[i], F->one());
  for (int j = 0; j < b; ++j) Qp.set(cperm[j], j, F->one());
  ScalarMatrix E1 = Pp * E * Qp;  // top-left r x r block invertible
  std::vector<int> lead(r);
  std::iota(lead.begin(), lead.end(), 0);
  ScalarMatrix A0inv = scalar_inverse(submatrix(E1, lead, lead));
  // row reduction: (A0^{-1} 0; -C0 A0^{-1} I)
  ScalarMatrix Pr = ScalarMatrix::identity(F, a);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) Pr.set(i, j, A0inv.at(i, j));
  for (int i = r; i < a; ++i) {
    for (int j = 0; j < r; ++j) {
      FieldElem acc = F->zero();
      for (int t = 0; t < r; ++t) acc = acc - E1.at(i, t) * A0inv.at(t, j);
      Pr.set(i, j, acc);
    }
  }
  ScalarMatrix E2 = Pr * E1;  // (I B'; 0 0) since rank is exactly r
  // column reduction: (I -B'; 0 I)
  ScalarMatrix Qc = ScalarMatrix::identity(F, b);
  for (int i = 0; i < r; ++i)
    for (int j = r; j < b; ++j) Qc.set(i, j, -E2.at(i, j));
  return {Pr * Pp, Qp * Qc};
}

}  // namespace

D1Decomposition pr_decompose_d1(const FormMatrix& M) {
  require(M.d() == 1, "specialized algorithm requires d = 1");
  const FieldPtr& F = M.field();
  int a = M.rows(), b = M.cols(), n = M.n();

  D1Decomposition out;
  out.P = ScalarMatrix::identity(F, a);
  out.Q = ScalarMatrix::identity(F, b);
  out.D.F = F;
  out.D.a = a;
  out.D.b = b;
  out.D.d = 1;
  out.D.n = n;
  if (M.is_zero()) return out;

  // first point (lexicographically) with a nonzero evaluation
  uint64_t total = num_points(F, 1, n, (uint64_t)1 << 22);
  ScalarMatrix E(F, a, b);
  Point p;
  bool found = false;
  for (uint64_t code = 0; code < total && !found; ++code) {
    p = point_from_code(F, 1, n, code);
    E = eval_matrix(M, p);
    if (!E.is_zero()) found = true;
  }
  check_internal(found, "nonzero matrix evaluates to zero everywhere");

  // normalize the point to e_1 and the evaluation to (I 0; 0 0)
  ScalarMatrix L = complete_basis(p[0]);
  FormMatrix M1 = substitute_linear(M, 1, L);
  RankInfo info = scalar_rank(E);
  int r = info.rank;
  auto [P0, Q0] = normal_form_at(E, r, info);
  FormMatrix MT = mul_scalar_left(P0, mul_scalar_right(M1, Q0));

  // top r rows and first r columns leave, the rest recurses
  std::vector<RankOneTerm> local_terms;
  for (int i = 0; i < r; ++i) {
    RankOneTerm t;
    t.subset_mask = 0;
    t.u.assign(a, MultilinearForm(F, {}, n));
    t.u[i] = MultilinearForm::scalar(F, n, F->one());
    t.v.reserve(b);
    for (int j = 0; j < b; ++j) t.v.push_back(MT.at(i, j));
    local_terms.push_back(std::move(t));
  }
  for (int j = 0; j < r; ++j) {
    RankOneTerm t;
    t.subset_mask = 1;
    t.u.assign(a, MultilinearForm(F, {1}, n));
    bool nonzero = false;
    for (int i = r; i < a; ++i) {
      t.u[i] = MT.at(i, j);
      if (!t.u[i].is_zero()) nonzero = true;
    }
    t.v.assign(b, MultilinearForm(F, {}, n));
    t.v[j] = MultilinearForm::scalar(F, n, F->one());
    if (nonzero) local_terms.push_back(std::move(t));
  }

  FormMatrix D_block(F, 1, n, a - r, b - r);
  for (int i = r; i < a; ++i)
    for (int j = r; j < b; ++j) D_block.set(i - r, j - r, MT.at(i, j));
  D1Decomposition sub = pr_decompose_d1(D_block);

  // embed the recursive terms into the full index space
  for (const auto& t : sub.D.terms) {
    RankOneTerm full;
    full.subset_mask = t.subset_mask;
    full.u.assign(a, MultilinearForm(F, t.u.empty() ? std::vector<int>{} : t.u[0].blocks(), n));
    full.v.assign(b, MultilinearForm(F, t.v.empty() ? std::vector<int>{} : t.v[0].blocks(), n));
    for (int i = 0; i < a - r; ++i) full.u[r + i] = t.u[i];
    for (int j = 0; j < b - r; ++j) full.v[r + j] = t.v[j];
    local_terms.push_back(std::move(full));
  }

  // back through the scalar bases, then undo the point normalization
  ScalarMatrix P0inv = scalar_inverse(P0);
  ScalarMatrix Q0invT = scalar_inverse(Q0).transpose();
  ScalarMatrix Linv = scalar_inverse(L);
  for (auto& t : local_terms) {
    t.u = apply_scalar(P0inv, t.u);
    t.v = apply_scalar(Q0invT, t.v);
    auto fix = [&](std::vector<MultilinearForm>& vec) {
      for (auto& f : vec) {
        if (!f.blocks().empty()) f = substitute_linear(f, 1, Linv);
      }
    };
    fix(t.u);
    fix(t.v);
    out.D.terms.push_back(std::move(t));
  }

  // P = diag(I_r, P_sub) P0,  Q = Q0 diag(I_r, Q_sub)
  ScalarMatrix Pblock = ScalarMatrix::identity(F, a);
  for (int i = 0; i < a - r; ++i)
    for (int j = 0; j < a - r; ++j) Pblock.set(r + i, r + j, sub.P.at(i, j));
  ScalarMatrix Qblock = ScalarMatrix::identity(F, b);
  for (int i = 0; i < b - r; ++i)
    for (int j = 0; j < b - r; ++j) Qblock.set(r + i, r + j, sub.Q.at(i, j));
  out.P = Pblock * P0;
  out.Q = Q0 * Qblock;
  out.r1 = r + sub.r1;
  out.r2 = r + sub.r2;

  IterationRecord rec;
  rec.point_code = point_code(F, p);
  rec.r = r;
  rec.cr_before = -1;  // not computed by the specialized algorithm
  rec.cr_after = -1;
  out.D.log.push_back(rec);
  for (const auto& sr : sub.D.log) out.D.log.push_back(sr);
  return out;
}

PartitionDecomposition lift_project(const PartitionDecomposition& DK,
                                    const ExtensionMap& ext) {
  require(same_field(DK.F, ext.super()), "decomposition not over the extension field");
  PartitionDecomposition D;
  D.F = ext.sub();
  D.a = DK.a;
  D.b = DK.b;
  D.d = DK.d;
  D.n = DK.n;
  D.log = DK.log;
  int e = ext.degree();

  // validate the precondition: the decomposed matrix has base-field entries
  FormMatrix value = decomposition_value(DK);
  for (int i = 0; i < value.rows(); ++i)
    for (int j = 0; j < value.cols(); ++j)
      for (const auto& [idx, c] : value.at(i, j).terms())
        require(ext.in_base(c), "decomposed matrix has coefficients outside the base field");

  auto project_form = [&](const MultilinearForm& f, const FieldElem& mult) {
    MultilinearForm out(ext.sub(), f.blocks(), f.n());
    for (const auto& [idx, c] : f.terms()) out.add_term(idx, ext.project(mult * c));
    return out;
  };
  auto slice_form = [&](const MultilinearForm& f, int i) {
    MultilinearForm out(ext.sub(), f.blocks(), f.n());
    for (const auto& [idx, c] : f.terms()) out.add_term(idx, ext.decompose(c)[i]);
    return out;
  };

  for (const auto& t : DK.terms) {
    for (int i = 0; i < e; ++i) {
      RankOneTerm nt;
      nt.subset_mask = t.subset_mask;
      bool u_nonzero = false, v_nonzero = false;
      nt.u.reserve(t.u.size());
      nt.v.reserve(t.v.size());
      for (const auto& f : t.u) {
        MultilinearForm g = slice_form(f, i);
        if (!g.is_zero()) u_nonzero = true;
        nt.u.push_back(std::move(g));
      }
      for (const auto& f : t.v) {
        MultilinearForm g = project_form(f, ext.basis()[i]);
        if (!g.is_zero()) v_nonzero = true;
        nt.v.push_back(std::move(g));
      }
      if (u_nonzero && v_nonzero) D.terms.push_back(std::move(nt));
    }
  }
  return D;
}

VerifyReport verify(const FormMatrix& M, const PartitionDecomposition& D) {
  require(M.rows() == D.a && M.cols() == D.b && M.d() == D.d && M.n() == D.n,
          "matrix and decomposition dimensions disagree");
  require(same_field(M.field(), D.F), "matrix and decomposition fields disagree");
  VerifyReport rep;
  rep.equal = (decomposition_value(D) == M);
  rep.term_count = (int)D.terms.size();
  for (const auto& t : D.terms) rep.per_subset[t.subset_mask]++;
  rep.bound = bound_constant(M.d(), M.field()->q());
  try {
    rep.cr = comm_rank_symbolic(M);
    rep.cr_known = true;
  } catch (const std::runtime_error&) {
    rep.cr_known = false;  // symbolic rank out of budget for this shape
  }
  if (rep.cr_known && rep.bound.valid)
    rep.within_bound = Rational(rep.term_count) <= rep.bound.C * Rational(rep.cr);
  return rep;
}

}  // namespace mlrank
