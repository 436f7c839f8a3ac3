#include <doctest.h>

#include "helpers.hpp"
#include "mlrank/corpus.hpp"
#include "mlrank/errors.hpp"
#include "mlrank/polyops.hpp"
#include "mlrank/prng.hpp"

using namespace mlrank;
using namespace mlrank::testing;

TEST_SUITE_BEGIN("polyops");

TEST_CASE("order of vanishing") {
  FieldPtr F = FieldCtx::make(2);
  Poly f(F, 2);
  f.add_term({1, 1}, F->one());  // x1 x2
  CHECK(*mult(f, mk_vec(F, {0, 0})) == 2);
  CHECK(*mult(f, mk_vec(F, {1, 0})) == 1);
  CHECK(*mult(f, mk_vec(F, {1, 1})) == 0);
  CHECK_FALSE(mult(Poly(F, 2), mk_vec(F, {0, 0})).has_value());
  CHECK_THROWS_AS(mult(f, mk_vec(F, {0})), input_error);
}

TEST_CASE("vanishing iff multiplicity at least one (sampled)") {
  Rng rng{19};
  uint64_t ctr = 0;
  FieldPtr F = FieldCtx::make(3);
  for (int i = 0; i < 200; ++i) {
    Poly f(F, 2);
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) {
        int64_t c = (int64_t)rng.at_below(ctr++, 3);
        if (c) f.add_term({a, b}, F->from_int(c));
      }
    if (f.is_zero()) continue;
    VecF p = mk_vec(F, {(int64_t)rng.at_below(ctr++, 3), (int64_t)rng.at_below(ctr++, 3)});
    CHECK((f.eval(p).is_zero()) == (*mult(f, p) >= 1));
  }
}

TEST_CASE("multiplicity inequality examples") {
  FieldPtr F2 = FieldCtx::make(2);
  Poly f(F2, 2);
  f.add_term({1, 1}, F2->one());
  MultSZReport r = multsz_check(f);
  CHECK(r.lhs == 4);
  CHECK(r.rhs == 4);
  CHECK(r.holds);

  Poly c(F2, 2);
  c.add_term({0, 0}, F2->one());
  MultSZReport rc = multsz_check(c);
  CHECK(rc.lhs == 0);
  CHECK(rc.holds);

  FieldPtr F3 = FieldCtx::make(3);
  Poly x1(F3, 1);
  x1.add_term({1}, F3->one());
  MultSZReport r3 = multsz_check(x1);
  CHECK(r3.lhs == 1);
  CHECK(r3.rhs == 1);
  CHECK(r3.holds);

  CHECK_THROWS_AS(multsz_check(Poly(F2, 2)), input_error);
}

TEST_CASE("multiplicity inequality, exhaustive and randomized") {
  // every nonzero polynomial in two variables of degree <= 2 over F_2
  FieldPtr F2 = FieldCtx::make(2);
  std::vector<std::vector<int32_t>> monos = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  int checked = 0;
  for (int code = 1; code < 64; ++code) {
    Poly g(F2, 2);
    for (int b = 0; b < 6; ++b)
      if (code & (1 << b)) g.add_term(monos[b], F2->one());
    CHECK(multsz_check(g).holds);
    ++checked;
  }
  CHECK(checked == 63);

  // random degree <= 3 polynomials over F_3
  FieldPtr F3 = FieldCtx::make(3);
  Rng rng{20};
  uint64_t ctr = 0;
  int done = 0;
  while (done < 1000) {
    Poly g(F3, 2);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        int64_t c = (int64_t)rng.at_below(ctr++, 3);
        if (c) g.add_term({a, b}, F3->from_int(c));
      }
    if (g.is_zero()) continue;
    CHECK(multsz_check(g).holds);
    ++done;
  }
}

TEST_CASE("symbolic determinants") {
  FormMatrix skew = make_example("intro-skew", {.q = 2});
  CHECK(det_poly(skew).is_zero());

  FieldPtr F = FieldCtx::make(3);
  FormMatrix I(F, 0, 1, 2, 2);
  I.set(0, 0, MultilinearForm::scalar(F, 1, F->one()));
  I.set(1, 1, MultilinearForm::scalar(F, 1, F->one()));
  CHECK(det_poly(I) == Poly::constant(F, 0, F->one()));

  FormMatrix diag = make_example("intro-diag", {.q = 2});
  Poly det = det_poly(diag);
  // a1 a2 (a1 + a2) expanded over F_2: a1^2 a2 + a1 a2^2
  FieldPtr F2 = diag.field();
  Poly expect(F2, 2);
  expect.add_term({2, 1}, F2->one());
  expect.add_term({1, 2}, F2->one());
  CHECK(det == expect);
}

TEST_CASE("determinants of square multilinear matrices are block-homogeneous") {
  for (const char* name : {"intro-diag", "intro-skew"}) {
    FormMatrix M = make_example(name, {.q = 3});
    Poly det = det_poly(M);
    if (det.is_zero()) continue;
    auto deg = block_degrees(det, M.d(), M.n());
    REQUIRE(deg.has_value());
    for (int b = 0; b < M.d(); ++b) CHECK((*deg)[b] == M.rows());
  }
  FormMatrix E = make_example("ex45", {.q = 2});
  CHECK(det_poly(E).is_zero());

  // random square d=2 instances: nonzero determinants have degree (r, r)
  for (int i = 0; i < 10; ++i) {
    FormMatrix M = gen_random(FieldCtx::make(3), 2, 2, 3, 3, 0.7, 600 + i);
    Poly det = det_poly(M);
    if (det.is_zero()) continue;
    auto deg = block_degrees(det, 2, 2);
    REQUIRE(deg.has_value());
    CHECK(*deg == std::vector<int>{3, 3});
  }
}

TEST_CASE("adjugate identity") {
  FieldPtr F = FieldCtx::make(5);
  for (int i = 0; i < 10; ++i) {
    FormMatrix M = gen_random(F, 1, 2, 3, 3, 0.8, 700 + i);
    auto P = to_poly_matrix(M);
    auto adj = adjugate_poly(P);
    Poly det = det_poly(P);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        Poly acc(F, P[0][0].nvars());
        for (int t = 0; t < 3; ++t) acc = acc + adj[r][t] * P[t][c];
        CHECK(acc == (r == c ? det : Poly(F, P[0][0].nvars())));
      }
  }
}

TEST_SUITE_END();
