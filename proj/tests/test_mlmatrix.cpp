#include <doctest.h>

#include "helpers.hpp"
#include "mlrank/corpus.hpp"
#include "mlrank/errors.hpp"
#include "mlrank/mlmatrix.hpp"
#include "mlrank/prng.hpp"

using namespace mlrank;
using namespace mlrank::testing;

TEST_SUITE_BEGIN("mlmatrix");

TEST_CASE("matrix evaluation") {
  FormMatrix M = make_example("intro-diag", {.q = 2});
  FieldPtr F = M.field();
  ScalarMatrix E = eval_matrix(M, mk_point(F, {{1, 1}}));
  CHECK(E == mk_scalar(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));

  FormMatrix X = make_example("ex45", {.q = 3});
  ScalarMatrix Z = eval_matrix(X, mk_point(X.field(), {{0, 0}, {1, 2}}));
  CHECK(Z.is_zero());  // any zero block annihilates every entry

  // d = 0: evaluation at the empty point returns the scalar entries
  FieldPtr F5 = FieldCtx::make(5);
  FormMatrix S(F5, 0, 1, 2, 2);
  S.set(0, 1, MultilinearForm::scalar(F5, 1, F5->from_int(3)));
  CHECK(eval_matrix(S, {}) == mk_scalar(F5, {{0, 3}, {0, 0}}));
}

TEST_CASE("scalar rank and pivots") {
  FieldPtr F = FieldCtx::make(2);
  RankInfo id3 = scalar_rank(ScalarMatrix::identity(F, 3));
  CHECK(id3.rank == 3);
  CHECK(id3.pivot_rows == std::vector<int>{0, 1, 2});
  CHECK(id3.pivot_cols == std::vector<int>{0, 1, 2});

  CHECK(scalar_rank(ScalarMatrix(F, 3, 4)).rank == 0);

  RankInfo diag = scalar_rank(mk_scalar(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
  CHECK(diag.rank == 2);
  CHECK(diag.pivot_rows == std::vector<int>{0, 1});
  CHECK(diag.pivot_cols == std::vector<int>{0, 1});
}

TEST_CASE("scalar inverse") {
  FieldPtr F7 = FieldCtx::make(7);
  CHECK(scalar_inverse(ScalarMatrix::identity(F7, 4)) == ScalarMatrix::identity(F7, 4));
  CHECK(scalar_inverse(mk_scalar(F7, {{2}})) == mk_scalar(F7, {{4}}));
  CHECK_THROWS_AS(scalar_inverse(mk_scalar(F7, {{0}})), input_error);

  Rng rng{3};
  uint64_t ctr = 0;
  for (int i = 0; i < 50; ++i) {
    ScalarMatrix A(F7, 3, 3);
    do {
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) A.set(r, c, F7->from_int((int64_t)rng.at_below(ctr++, 7)));
    } while (scalar_rank(A).rank < 3);
    CHECK(A * scalar_inverse(A) == ScalarMatrix::identity(F7, 3));
  }
}

TEST_CASE("invertible submatrix selection") {
  FormMatrix M = make_example("intro-diag", {.q = 2});
  FieldPtr F = M.field();
  Point p = mk_point(F, {{1, 1}});
  auto [rows, cols] = find_invertible_submatrix(M, p, 2);
  CHECK(rows == std::vector<int>{0, 1});
  CHECK(cols == std::vector<int>{0, 1});
  auto [r0, c0] = find_invertible_submatrix(M, p, 0);
  CHECK(r0.empty());
  CHECK(c0.empty());
  CHECK_THROWS_AS(find_invertible_submatrix(M, p, 3), input_error);
}

TEST_CASE("rank invariance and subadditivity (sampled)") {
  FieldPtr F = FieldCtx::make(3);
  Rng rng{11};
  uint64_t ctr = 0;
  auto random_matrix = [&](int a, int b) {
    ScalarMatrix M(F, a, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) M.set(i, j, F->from_int((int64_t)rng.at_below(ctr++, 3)));
    return M;
  };
  auto random_invertible = [&](int m) {
    ScalarMatrix P(F, m, m);
    do {
      P = random_matrix(m, m);
    } while (scalar_rank(P).rank < m);
    return P;
  };
  for (int i = 0; i < 100; ++i) {
    ScalarMatrix A = random_matrix(3, 4), B = random_matrix(3, 4);
    CHECK(scalar_rank(A + B).rank <= scalar_rank(A).rank + scalar_rank(B).rank);
    ScalarMatrix P = random_invertible(3), Q = random_invertible(4);
    CHECK(scalar_rank(P * A * Q).rank == scalar_rank(A).rank);
  }
}

TEST_CASE("linear substitution") {
  FieldPtr F = FieldCtx::make(3);
  FormMatrix M = make_example("intro-diag", {.q = 3});
  CHECK(substitute_linear(M, 1, ScalarMatrix::identity(F, 2)) == M);

  // swapping coordinates exchanges the two variables
  ScalarMatrix S = mk_scalar(F, {{0, 1}, {1, 0}});
  MultilinearForm x11 = mk_form(F, {1}, 2, {{{1}, 1}});
  MultilinearForm x12 = mk_form(F, {1}, 2, {{{2}, 1}});
  CHECK(substitute_linear(x11, 1, S) == x12);

  // round trip through a random invertible change of basis
  Rng rng{5};
  uint64_t ctr = 0;
  for (int i = 0; i < 30; ++i) {
    ScalarMatrix L(F, 2, 2);
    do {
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) L.set(r, c, F->from_int((int64_t)rng.at_below(ctr++, 3)));
    } while (scalar_rank(L).rank < 2);
    FormMatrix back = substitute_linear(substitute_linear(M, 1, L), 1, scalar_inverse(L));
    CHECK(back == M);
  }

  CHECK_THROWS_AS(substitute_linear(M, 1, ScalarMatrix(F, 2, 2)), input_error);
}

TEST_CASE("partial matrix evaluation renumbers blocks") {
  FormMatrix M = make_example("ex45", {.q = 2});
  FieldPtr F = M.field();
  FormMatrix M1 = partial_eval_matrix(M, {{1, mk_vec(F, {1, 0})}});
  CHECK(M1.d() == 1);
  // substituting x_1 = e_1 in the corner leaves the linear form b_1
  CHECK(M1.at(0, 0) == mk_form(F, {1}, 2, {{{1}, 1}}));
}

TEST_CASE("point codes are a lexicographic bijection") {
  FieldPtr F = FieldCtx::make(3);
  uint64_t total = num_points(F, 2, 1, 1 << 10);
  CHECK(total == 9);
  for (uint64_t code = 0; code < total; ++code)
    CHECK(point_code(F, point_from_code(F, 2, 1, code)) == code);
  CHECK_THROWS_AS(num_points(F, 4, 4, 1 << 10), budget_error);
}

TEST_SUITE_END();
