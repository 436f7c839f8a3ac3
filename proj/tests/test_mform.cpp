#include <doctest.h>

#include "helpers.hpp"
#include "mlrank/errors.hpp"
#include "mlrank/mform.hpp"
#include "mlrank/prng.hpp"

using namespace mlrank;
using namespace mlrank::testing;

TEST_SUITE_BEGIN("mform");

namespace {

MultilinearForm random_form(const FieldPtr& F, std::vector<int> blocks, int n, Rng& rng,
                            uint64_t& ctr) {
  MultilinearForm f(F, blocks, n);
  int64_t tuples = 1;
  for (size_t i = 0; i < blocks.size(); ++i) tuples *= n;
  Index idx(blocks.size(), 1);
  for (int64_t t = 0; t < tuples; ++t) {
    int64_t c = (int64_t)rng.at_below(ctr++, (uint64_t)F->q());
    if (c) f.add_term(idx, F->from_int(c));
    int b = (int)blocks.size() - 1;
    while (b >= 0 && idx[b] == n) { idx[b] = 1; --b; }
    if (b >= 0) ++idx[b];
  }
  return f;
}

VecF random_vec(const FieldPtr& F, int n, Rng& rng, uint64_t& ctr) {
  VecF v;
  for (int i = 0; i < n; ++i) v.push_back(F->from_int((int64_t)rng.at_below(ctr++, (uint64_t)F->q())));
  return v;
}

}  // namespace

TEST_CASE("evaluation") {
  FieldPtr F = FieldCtx::make(3);
  // x_{1,1} - x_{1,2} at (1, 0)
  MultilinearForm f = mk_form(F, {1}, 2, {{{1}, 1}, {{2}, 2}});
  CHECK(eval(f, {{1, mk_vec(F, {1, 0})}}) == F->one());

  MultilinearForm g = mk_form(F, {1, 2}, 2, {{{1, 1}, 1}});
  CHECK(eval(g, {{1, mk_vec(F, {1, 0})}, {2, mk_vec(F, {1, 0})}}) == F->one());

  MultilinearForm z(F, {1}, 2);
  CHECK(eval(z, {{1, mk_vec(F, {2, 2})}}).is_zero());

  CHECK_THROWS_AS(eval(f, {{2, mk_vec(F, {1, 0})}}), input_error);
  CHECK_THROWS_AS(eval(f, {{1, mk_vec(F, {1})}}), input_error);
}

TEST_CASE("partial evaluation") {
  FieldPtr F = FieldCtx::make(2);
  // x_{1,1} x_{2,2} + x_{1,2} x_{2,1} with x_2 := e_1 collapses to x_{1,2}
  MultilinearForm f = mk_form(F, {1, 2}, 2, {{{1, 2}, 1}, {{2, 1}, 1}});
  MultilinearForm expect = mk_form(F, {1}, 2, {{{2}, 1}});
  CHECK(partial_eval(f, {{2, mk_vec(F, {1, 0})}}) == expect);

  CHECK(partial_eval(f, {}) == f);

  MultilinearForm g = mk_form(F, {1, 2}, 2, {{{1, 1}, 1}});
  CHECK(partial_eval(g, {{2, mk_vec(F, {0, 0})}}).is_zero());

  CHECK_THROWS_AS(partial_eval(g, {{3, mk_vec(F, {1, 0})}}), input_error);
}

TEST_CASE("disjoint product") {
  FieldPtr F = FieldCtx::make(5);
  MultilinearForm x11 = mk_form(F, {1}, 2, {{{1}, 1}});
  MultilinearForm x21 = mk_form(F, {2}, 2, {{{1}, 1}});
  CHECK(mul_disjoint(x11, x21) == mk_form(F, {1, 2}, 2, {{{1, 1}, 1}}));

  MultilinearForm c = MultilinearForm::scalar(F, 2, F->from_int(3));
  MultilinearForm f = mk_form(F, {1}, 2, {{{1}, 1}, {{2}, 2}});
  CHECK(mul_disjoint(c, f) == f.scale(F->from_int(3)));

  MultilinearForm sum = mk_form(F, {1}, 2, {{{1}, 1}, {{2}, 1}});
  CHECK(mul_disjoint(sum, x21) ==
        mk_form(F, {1, 2}, 2, {{{1, 1}, 1}, {{2, 1}, 1}}));

  CHECK_THROWS_AS(mul_disjoint(x11, f), input_error);
}

TEST_CASE("product and evaluation commute (sampled)") {
  Rng rng{99};
  uint64_t ctr = 0;
  FieldPtr F = FieldCtx::make(3);
  for (int i = 0; i < 1000; ++i) {
    MultilinearForm f = random_form(F, {1}, 2, rng, ctr);
    MultilinearForm g = random_form(F, {2, 3}, 2, rng, ctr);
    Assignment a = {{1, random_vec(F, 2, rng, ctr)},
                    {2, random_vec(F, 2, rng, ctr)},
                    {3, random_vec(F, 2, rng, ctr)}};
    Assignment af = {{1, a[1]}};
    Assignment ag = {{2, a[2]}, {3, a[3]}};
    CHECK(eval(mul_disjoint(f, g), a) == eval(f, af) * eval(g, ag));
  }
}

TEST_CASE("partial evaluations over disjoint sets commute (sampled)") {
  Rng rng{7};
  uint64_t ctr = 0;
  FieldPtr F = FieldCtx::make(2);
  for (int i = 0; i < 200; ++i) {
    MultilinearForm f = random_form(F, {1, 2, 3}, 2, rng, ctr);
    VecF p1 = random_vec(F, 2, rng, ctr), p3 = random_vec(F, 2, rng, ctr);
    MultilinearForm one_shot = partial_eval(f, {{1, p1}, {3, p3}});
    MultilinearForm stepwise = partial_eval(partial_eval(f, {{1, p1}}), {{3, p3}});
    CHECK(one_shot == stepwise);
  }
}

TEST_CASE("evaluation is homogeneous per block (sampled)") {
  Rng rng{31};
  uint64_t ctr = 0;
  FieldPtr F = FieldCtx::make(5);
  for (int i = 0; i < 300; ++i) {
    MultilinearForm f = random_form(F, {1, 2}, 2, rng, ctr);
    VecF p1 = random_vec(F, 2, rng, ctr), p2 = random_vec(F, 2, rng, ctr);
    FieldElem c1 = F->from_int((int64_t)rng.at_below(ctr++, 5));
    FieldElem c2 = F->from_int((int64_t)rng.at_below(ctr++, 5));
    VecF s1 = p1, s2 = p2;
    for (auto& v : s1) v = v * c1;
    for (auto& v : s2) v = v * c2;
    CHECK(eval(f, {{1, s1}, {2, s2}}) == c1 * c2 * eval(f, {{1, p1}, {2, p2}}));
  }
}

TEST_CASE("polynomial shift, degree, derivative") {
  FieldPtr F2 = FieldCtx::make(2);
  Poly f(F2, 2);
  f.add_term({1, 1}, F2->one());  // x1 x2
  CHECK(f.shift({F2->zero(), F2->zero()}) == f);
  CHECK(*f.min_degree() == 2);

  Poly g = f;
  g.add_term({1, 0}, F2->one());  // x1 x2 + x1
  CHECK(*g.min_degree() == 1);

  Poly sq(F2, 1);
  sq.add_term({2}, F2->one());  // x^2 over F_2
  CHECK(sq.derivative(0).is_zero());

  FieldPtr F3 = FieldCtx::make(3);
  Poly cube(F3, 1);
  cube.add_term({2}, F3->one());
  Poly expect(F3, 1);
  expect.add_term({1}, F3->from_int(2));
  CHECK(cube.derivative(0) == expect);

  CHECK_FALSE(Poly(F2, 3).min_degree().has_value());
}

TEST_CASE("form to polynomial flattening") {
  FieldPtr F = FieldCtx::make(2);
  MultilinearForm f = mk_form(F, {1, 2}, 2, {{{1, 2}, 1}});
  Poly p = form_to_poly(f, 2, 2);
  std::vector<int32_t> e = {1, 0, 0, 1};  // x_{1,1} x_{2,2}
  CHECK(p.terms().count(e) == 1);
  auto deg = block_degrees(p, 2, 2);
  REQUIRE(deg.has_value());
  CHECK(*deg == std::vector<int>{1, 1});
}

TEST_SUITE_END();
