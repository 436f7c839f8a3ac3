#include "mlrank/selfcheck.hpp"

#include <functional>
#include <sstream>

#include "mlrank/corpus.hpp"
#include "mlrank/decomp.hpp"
#include "mlrank/errors.hpp"
#include "mlrank/localring.hpp"
#include "mlrank/polyops.hpp"
#include "mlrank/prng.hpp"
#include "mlrank/ranks.hpp"
#include "mlrank/schur.hpp"
#include "mlrank/tensor3.hpp"

namespace mlrank {

namespace {

using Check = std::function<bool(std::string&)>;

// (a1^2 + a2^2)/(a1 + a2) approximated at e_1, both constructions
bool check_approximation(std::string& detail) {
  for (int64_t q : {2, 3, 5, 7}) {
    FieldPtr F = FieldCtx::make(q);
    Poly num(F, 2), den(F, 2);
    num.add_term({2, 0}, F->one());
    num.add_term({0, 2}, F->one());
    den.add_term({1, 0}, F->one());
    den.add_term({0, 1}, F->one());
    Point p = {{F->one(), F->zero()}};

    LocalElem ln = expand_poly(num, 1, 2, p);
    LocalElem ld = expand_poly(den, 1, 2, p);
    MultilinearForm via_ring = approx_extract(lr_mul(ln, lr_inv(ld)));
    MultilinearForm via_deriv = approx_derivative_oracle(num, den, 1, 2, p);

    MultilinearForm expected(F, {1}, 2);
    expected.add_term({1}, F->one());
    expected.add_term({2}, -F->one());  // a1 - a2; over F_2 this is a1 + a2
    if (via_ring != expected || via_deriv != expected) {
      detail = "mismatch over F_" + std::to_string(q);
      return false;
    }
  }
  return true;
}

bool check_schur_worked_example(std::string& detail) {
  FormMatrix M = make_example("ex45", {.q = 7});
  FieldPtr F = M.field();
  Point p = {{F->one(), F->zero()}, {F->one(), F->zero()}};
  DiffSchur ds = diff_schur(M, {0}, {0}, p);

  FormMatrix expected(F, 2, 2, 5, 5);
  auto nab = [&](int i, int j) {
    MultilinearForm f(F, {1, 2}, 2);
    f.add_term({(int32_t)i, (int32_t)j}, -F->one());
    return f;
  };
  expected.set(1, 1, nab(1, 1));
  expected.set(1, 2, nab(1, 2));
  expected.set(1, 3, nab(2, 1));
  expected.set(1, 4, nab(2, 2));
  expected.set(2, 1, nab(1, 2));
  expected.set(2, 3, nab(2, 2));
  expected.set(3, 1, nab(2, 1));
  expected.set(3, 2, nab(2, 2));
  expected.set(4, 1, nab(2, 2));

  if (ds.remainder != expected) { detail = "remainder differs"; return false; }
  if (ds.terms.size() != 4) { detail = "term count != 4"; return false; }
  if (comm_rank_symbolic(ds.remainder) != 4) { detail = "remainder rank != 4"; return false; }
  if (M - ds.remainder != terms_value(ds.terms, F, 2, 2, 5, 5)) {
    detail = "reconstruction fails";
    return false;
  }
  return true;
}

bool check_intro_examples(std::string& detail) {
  for (int64_t q : {2}) {
    FormMatrix Md = make_example("intro-diag", {.q = q});
    if (max_rank_exhaustive(Md).rank != 2) { detail = "diag max-rank"; return false; }
    if (comm_rank_symbolic(Md) != 3) { detail = "diag commutative rank"; return false; }
  }
  for (int64_t q : {2, 3}) {
    FormMatrix Ms = make_example("intro-skew", {.q = q});
    if (comm_rank_symbolic(Ms) != 2) { detail = "skew commutative rank"; return false; }
    if (pr_exact_d1(Ms) != 3) { detail = "skew partition rank"; return false; }
  }
  return true;
}

bool check_bound_constants(std::string& detail) {
  for (int64_t q : {2, 3, 5, 7, 9}) {
    BoundReport r = bound_constant(1, q);
    if (!r.valid || r.C != Rational(2)) { detail = "d=1 constant"; return false; }
  }
  BoundReport r27 = bound_constant(2, 7);
  if (!r27.valid || r27.C != Rational(72, 5)) { detail = "(2,7) constant"; return false; }
  if (bound_constant(2, 5).valid) { detail = "(2,5) should be invalid"; return false; }
  if (bound_constant(3, 0).C != Rational(8)) { detail = "infinite-field constant"; return false; }
  for (int d = 0; d <= 3; ++d)
    for (int64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 64}) {
      BoundReport r = bound_constant(d, q);
      if (r.valid && r.C < Rational((int64_t)1 << d)) {
        detail = "C below 2^d";
        return false;
      }
    }
  return true;
}

bool check_d1_compression(std::string& detail) {
  // canonical pair plus a seeded batch
  FormMatrix Md = make_example("intro-diag", {.q = 2});
  auto rd = pr_decompose_d1(Md);
  if (decomposition_value(rd.D) != Md || rd.r1 + rd.r2 > 6) {
    detail = "diag decomposition";
    return false;
  }
  FormMatrix Ms = make_example("intro-skew", {.q = 2});
  auto rs = pr_decompose_d1(Ms);
  int sum = rs.r1 + rs.r2;
  if (decomposition_value(rs.D) != Ms || sum < 3 || sum > 4) {
    detail = "skew decomposition";
    return false;
  }
  for (int i = 0; i < 25; ++i) {
    int64_t q = (i % 2 == 0) ? 2 : 3;
    FieldPtr F = FieldCtx::make(q);
    int a = 1 + i % 4, b = 1 + (i / 2) % 4, n = 1 + i % 3;
    FormMatrix M = gen_random(F, 1, n, a, b, 0.55, 900 + i);
    auto res = pr_decompose_d1(M);
    if (decomposition_value(res.D) != M) { detail = "random reconstruction"; return false; }
    int cr = comm_rank_symbolic(M);
    if (res.r1 + res.r2 > 2 * cr) { detail = "compression bound"; return false; }
    // normal form: zero block below r1 / beyond r2
    FormMatrix NF = mul_scalar_left(res.P, mul_scalar_right(M, res.Q));
    for (int r = res.r1; r < a; ++r)
      for (int c = res.r2; c < b; ++c)
        if (!NF.at(r, c).is_zero()) { detail = "normal form"; return false; }
  }
  return true;
}

bool check_general_decomposition(std::string& detail) {
  FieldPtr F = FieldCtx::make(7);
  BoundReport bound = bound_constant(2, 7);
  for (int i = 0; i < 8; ++i) {
    FormMatrix M = gen_random(F, 2, 2, 4, 4, 0.5, 7100 + i);
    PartitionDecomposition D = pr_decompose(M);
    if (decomposition_value(D) != M) { detail = "reconstruction"; return false; }
    int cr = comm_rank_symbolic(M);
    if (Rational((int64_t)D.terms.size()) > bound.C * Rational(cr)) {
      detail = "count bound";
      return false;
    }
  }
  return true;
}

bool check_single_step(std::string& detail) {
  FieldPtr F = FieldCtx::make(7);
  int found = 0;
  for (int i = 0; found < 3 && i < 60; ++i) {
    FormMatrix M = gen_random(F, 2, 2, 3, 3, 0.6, 7300 + i);
    int cr = comm_rank_symbolic(M);
    if (cr == 0) continue;
    if (max_rank_exhaustive(M).rank != cr) continue;
    ++found;
    PartitionDecomposition D = pr_decompose(M);
    if (D.log.size() != 1 || (int64_t)D.terms.size() > 4 * (int64_t)cr) {
      detail = "not a single full step";
      return false;
    }
  }
  if (found == 0) { detail = "no instance with CR == MaxR found"; return false; }
  return true;
}

bool check_extension_transfer(std::string& detail) {
  FieldPtr F = FieldCtx::make(2);
  for (int i = 0; i < 5; ++i) {
    FormMatrix M = gen_random(F, 2, 2, 3, 3, 0.6, 5600 + i);
    DecomposeOptions opts;
    opts.allow_extension = true;
    PartitionDecomposition D = pr_decompose(M, opts);
    if (decomposition_value(D) != M) { detail = "reconstruction"; return false; }
    int e = D.log.empty() ? 1 : D.log.front().extension_degree;
    int cr = comm_rank_symbolic(M);
    if (cr > 0) {
      if (e < 2) { detail = "extension was not used"; return false; }
      BoundReport bound = bound_constant(2, (int64_t)1 << e);  // q = 2
      if (!bound.valid) { detail = "chosen extension invalid"; return false; }
      if (Rational((int64_t)D.terms.size()) > Rational(e) * bound.C * Rational(cr)) {
        detail = "transferred count bound";
        return false;
      }
    }
  }
  return true;
}

bool check_multiplicity(std::string& detail) {
  FieldPtr F2 = FieldCtx::make(2);
  Poly f(F2, 2);
  f.add_term({1, 1}, F2->one());  // x1 x2
  auto m00 = mult(f, {F2->zero(), F2->zero()});
  auto m10 = mult(f, {F2->one(), F2->zero()});
  auto m11 = mult(f, {F2->one(), F2->one()});
  if (*m00 != 2 || *m10 != 1 || *m11 != 0) { detail = "multiplicity values"; return false; }

  // every nonzero polynomial in 2 variables of degree <= 2 over F_2
  std::vector<std::vector<int32_t>> monos = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (int code = 1; code < 64; ++code) {
    Poly g(F2, 2);
    for (int b = 0; b < 6; ++b)
      if (code & (1 << b)) g.add_term(monos[b], F2->one());
    MultSZReport rep = multsz_check(g);
    if (!rep.holds) {
      detail = "inequality fails at code " + std::to_string(code);
      return false;
    }
  }
  return true;
}

bool check_rank_chain(std::string& detail) {
  // (1-1/q)^d CR <= avg <= max, strictly below max when nonzero
  std::vector<FormMatrix> suite;
  suite.push_back(make_example("intro-diag", {.q = 2}));
  suite.push_back(make_example("intro-skew", {.q = 3}));
  suite.push_back(make_example("tight-diag", {.q = 2, .k = 3}));
  suite.push_back(make_example("ex45", {.q = 2}));
  for (int i = 0; i < 20; ++i) {
    FieldPtr F = FieldCtx::make(i % 2 == 0 ? 2 : 3);
    suite.push_back(gen_random(F, 1 + i % 2, 2, 2 + i % 3, 2 + (i / 2) % 3, 0.5, 300 + i));
  }
  for (const auto& M : suite) {
    int d = M.d();
    int64_t q = M.field()->q();
    Rational avg = avg_rank(M);
    int mx = max_rank_exhaustive(M).rank;
    int cr = comm_rank_symbolic(M);
    Rational lo = Rational(1);
    for (int i = 0; i < d; ++i) lo = lo * Rational(q - 1, q);
    lo = lo * Rational(cr);
    if (!(lo <= avg && avg <= Rational(mx))) { detail = "sandwich fails"; return false; }
    if (!M.is_zero() && d > 0 && !(Rational(mx) > lo)) { detail = "strictness fails"; return false; }
  }
  return true;
}

bool check_partial_expectation(std::string& detail) {
  FieldPtr F = FieldCtx::make(2);
  for (int i = 0; i < 12; ++i) {
    FormMatrix M = gen_random(F, 2, 2, 2 + i % 2, 2 + (i / 2) % 2, 0.6, 520 + i);
    Rational e = expected_partial_cr(M);
    Rational rhs = Rational(1, 2) * Rational(comm_rank_symbolic(M));
    if (e < rhs) { detail = "expectation below (1-1/q) CR"; return false; }
  }
  return true;
}

bool check_tightness(std::string& detail) {
  for (int k : {2, 3}) {
    FormMatrix M = make_example("tight-diag", {.q = 2, .k = k});
    int mx = max_rank_exhaustive(M).rank;
    int cr = comm_rank_symbolic(M);
    if (mx != (1 << (k - 1)) || cr != (1 << k) - 1) {
      detail = "diagonal family (k=" + std::to_string(k) + ")";
      return false;
    }
  }
  FormMatrix K = make_example("tight-kron", {.q = 2, .k = 2, .d = 2});
  if (max_rank_exhaustive(K).rank != 4 || comm_rank_symbolic(K) != 9) {
    detail = "kronecker family";
    return false;
  }
  return true;
}

bool check_schur_bounds(std::string& detail) {
  // term-count and remainder-rank ceilings across random pivot choices
  for (int i = 0; i < 10; ++i) {
    FieldPtr F = FieldCtx::make(i % 2 == 0 ? 3 : 2);
    int d = 1 + i % 2;
    FormMatrix M = gen_random(F, d, 2, 3, 3, 0.7, 880 + i);
    uint64_t total = num_points(F, d, 2, 1 << 12);
    bool used = false;
    for (uint64_t code = 0; code < total && !used; ++code) {
      Point p = point_from_code(F, d, 2, code);
      RankInfo info = scalar_rank(eval_matrix(M, p));
      if (info.rank == 0) continue;
      int r = 1 + (int)(code % info.rank);
      auto [rows, cols] = find_invertible_submatrix(M, p, r);
      DiffSchur ds = diff_schur(M, rows, cols, p);
      if ((int64_t)ds.terms.size() > ((int64_t)1 << d) * r) { detail = "count"; return false; }
      if (comm_rank_symbolic(ds.remainder) > schur_rank_ceiling(M, p, r)) {
        detail = "rank ceiling";
        return false;
      }
      if (M != ds.remainder + terms_value(ds.terms, F, d, 2, 3, 3)) {
        detail = "reconstruction";
        return false;
      }
      used = true;
    }
  }
  return true;
}

bool check_scalar_schur(std::string& detail) {
  Rng rng{424242};
  uint64_t counter = 0;
  for (int i = 0; i < 60; ++i) {
    int64_t q = std::vector<int64_t>{2, 3, 7}[i % 3];
    FieldPtr F = FieldCtx::make(q);
    int a = 2 + (int)rng.at_below(counter++, 4), b = 2 + (int)rng.at_below(counter++, 4);
    ScalarMatrix M(F, a, b);
    for (int r = 0; r < a; ++r)
      for (int c = 0; c < b; ++c)
        M.set(r, c, F->from_int((int64_t)rng.at_below(counter++, (uint64_t)q)));
    RankInfo info = scalar_rank(M);
    if (info.rank == 0) continue;
    int r = 1 + (int)rng.at_below(counter++, (uint64_t)info.rank);
    std::vector<int> rows(info.pivot_rows.begin(), info.pivot_rows.begin() + r);
    std::vector<int> cols(info.pivot_cols.begin(), info.pivot_cols.begin() + r);
    ScalarMatrix S = schur_scalar(M, rows, cols);
    if (scalar_rank(S).rank != info.rank - r) { detail = "rank drop"; return false; }
  }
  return true;
}

bool check_tensor_pipeline(std::string& detail) {
  FieldPtr F = FieldCtx::make(2);
  // zero and single-monomial cases
  Tensor3 z{MultilinearForm(F, {1, 2, 3}, 1)};
  if (!slice_decompose(z).terms.empty()) { detail = "zero tensor"; return false; }
  MultilinearForm m(F, {1, 2, 3}, 1);
  m.add_term({1, 1, 1}, F->one());
  Tensor3 s{m};
  ARResult ar = analytic_rank(s);
  if (ar.bias != Rational(3, 4)) { detail = "monomial bias"; return false; }
  SliceDecomposition sd = slice_decompose(s);
  if (sd.terms.size() != 1) { detail = "monomial slice count"; return false; }

  for (int i = 0; i < 20; ++i) {
    int n = 1 + i % 2;
    Tensor3 T = gen_random_tensor(F, n, 0.5, 6400 + i);
    ARResult a = analytic_rank(T);
    SliceDecomposition D = slice_decompose(T);
    if (slice_value(D, F, n).f != T.f) { detail = "reconstruction"; return false; }
    int c = (int)D.terms.size();
    if (!ar_at_most(c, a.bias, 2)) { detail = "AR <= count"; return false; }
    if (!slice_count_within_bound(c, a.bias, 2)) { detail = "count bound"; return false; }
  }
  return true;
}

}  // namespace

std::vector<CheckResult> selfcheck_run() {
  std::vector<std::pair<std::string, Check>> checks = {
      {"approximation.dual-construction", check_approximation},
      {"schur.worked-5x5", check_schur_worked_example},
      {"schur.term-and-rank-ceilings", check_schur_bounds},
      {"schur.scalar-rank-drop", check_scalar_schur},
      {"ranks.intro-examples", check_intro_examples},
      {"ranks.avg-sandwich", check_rank_chain},
      {"ranks.partial-expectation", check_partial_expectation},
      {"ranks.tight-families", check_tightness},
      {"multiplicity.schwartz-zippel", check_multiplicity},
      {"decompose.bound-constants", check_bound_constants},
      {"decompose.d1-compression", check_d1_compression},
      {"decompose.general-d2", check_general_decomposition},
      {"decompose.single-full-step", check_single_step},
      {"decompose.extension-transfer", check_extension_transfer},
      {"tensor.slice-pipeline", check_tensor_pipeline},
  };
  std::vector<CheckResult> out;
  for (auto& [name, fn] : checks) {
    CheckResult r;
    r.name = name;
    try {
      r.pass = fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mlrank
