#include "mlrank/corpus.hpp"

#include <cmath>

#include "mlrank/errors.hpp"
#include "mlrank/prng.hpp"

namespace mlrank {

namespace {

FormMatrix intro_diag(const FieldPtr& F) {
  FormMatrix M(F, 1, 2, 3, 3);
  MultilinearForm a(F, {1}, 2), b(F, {1}, 2), ab(F, {1}, 2);
  a.add_term({1}, F->one());
  b.add_term({2}, F->one());
  ab.add_term({1}, F->one());
  ab.add_term({2}, F->one());
  M.set(0, 0, a);
  M.set(1, 1, b);
  M.set(2, 2, ab);
  return M;
}

FormMatrix intro_skew(const FieldPtr& F) {
  FormMatrix M(F, 1, 3, 3, 3);
  auto var = [&](int i) {
    MultilinearForm f(F, {1}, 3);
    f.add_term({(int32_t)i}, F->one());
    return f;
  };
  M.set(0, 1, var(1));
  M.set(0, 2, var(2));
  M.set(1, 2, var(3));
  M.set(1, 0, -var(1));
  M.set(2, 0, -var(2));
  M.set(2, 1, -var(3));
  return M;
}

FormMatrix tight_diag(const FieldPtr& F, int k) {
  require(k >= 1, "k must be >= 1");
  int64_t q = F->q();
  int64_t size = 1;
  for (int i = 0; i < k; ++i) size *= q;
  size = (size - 1) / (q - 1);
  require(size <= 512, "tight family too large");
  FormMatrix M(F, 1, k, (int)size, (int)size);
  // all nonzero linear forms, normalized so the first nonzero coordinate is
  // 1, in coefficient-code order
  int slot = 0;
  int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  for (int64_t code = 1; code < total; ++code) {
    VecF coef(k, F->zero());
    int64_t c = code;
    for (int i = 0; i < k; ++i) { coef[i] = F->from_int(c % q); c /= q; }
    int first = 0;
    while (coef[first].is_zero()) ++first;
    if (!coef[first].is_one()) continue;
    MultilinearForm f(F, {1}, k);
    for (int i = 0; i < k; ++i)
      if (!coef[i].is_zero()) f.add_term({(int32_t)i + 1}, coef[i]);
    M.set(slot, slot, f);
    ++slot;
  }
  check_internal(slot == (int)size, "normalized form count mismatch");
  return M;
}

FormMatrix ex45(const FieldPtr& F) {
  FormMatrix M(F, 2, 2, 5, 5);
  auto ab = [&](int i, int j) {
    MultilinearForm f(F, {1, 2}, 2);
    f.add_term({(int32_t)i, (int32_t)j}, F->one());
    return f;
  };
  // first row and first column list the four products a_i b_j, with a1 b1 in
  // the corner (appearing twice in the first row)
  M.set(0, 0, ab(1, 1));
  M.set(0, 1, ab(1, 1));
  M.set(0, 2, ab(1, 2));
  M.set(0, 3, ab(2, 1));
  M.set(0, 4, ab(2, 2));
  M.set(1, 0, ab(1, 1));
  M.set(2, 0, ab(1, 2));
  M.set(3, 0, ab(2, 1));
  M.set(4, 0, ab(2, 2));
  return M;
}

}  // namespace

FormMatrix kron_disjoint(const FormMatrix& A, const FormMatrix& B) {
  require(same_field(A.field(), B.field()), "field context mismatch");
  require(A.n() == B.n(), "factors with different n");
  std::map<int, int> shift;
  for (int b = 1; b <= B.d(); ++b) shift[b] = b + A.d();
  FormMatrix R(A.field(), A.d() + B.d(), A.n(), A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      if (A.at(i, j).is_zero()) continue;
      for (int i2 = 0; i2 < B.rows(); ++i2)
        for (int j2 = 0; j2 < B.cols(); ++j2) {
          if (B.at(i2, j2).is_zero()) continue;
          R.set(i * B.rows() + i2, j * B.cols() + j2,
                mul_disjoint(A.at(i, j), relabel_blocks(B.at(i2, j2), shift)));
        }
    }
  return R;
}

FormMatrix make_example(const std::string& name, const ExampleParams& params) {
  FieldPtr F = FieldCtx::make_from_q(params.q);
  if (name == "intro-diag") return intro_diag(F);
  if (name == "intro-skew") return intro_skew(F);
  if (name == "tight-diag") return tight_diag(F, params.k);
  if (name == "ex45") return ex45(F);
  if (name == "tight-kron") {
    require(params.d >= 1, "d must be >= 1");
    FormMatrix M = tight_diag(F, params.k);
    FormMatrix R = M;
    for (int i = 1; i < params.d; ++i) R = kron_disjoint(R, M);
    return R;
  }
  throw input_error("unknown example '" + name + "'");
}

FormMatrix gen_random(const FieldPtr& F, int d, int n, int rows, int cols,
                      double density, uint64_t seed) {
  require(d >= 0 && n >= 1 && rows >= 0 && cols >= 0, "bad dimensions");
  require(density >= 0.0 && density <= 1.0, "density must be in [0,1]");
  Rng rng{seed};
  FormMatrix M(F, d, n, rows, cols);
  uint64_t counter = 0;
  int64_t tuples = 1;
  for (int i = 0; i < d; ++i) tuples *= n;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      MultilinearForm f = M.at(i, j);
      Index idx(d, 1);
      for (int64_t t = 0; t < tuples; ++t) {
        double u = rng.at_unit(counter);
        uint64_t vcode = rng.at_below(counter + 1, (uint64_t)F->q() - 1);
        counter += 2;
        if (u < density) f.add_term(idx, F->from_int((int64_t)vcode + 1));
        // odometer over [n]^d, last block fastest
        int b = d - 1;
        while (b >= 0 && idx[b] == n) { idx[b] = 1; --b; }
        if (b >= 0) ++idx[b];
      }
      M.set(i, j, std::move(f));
    }
  return M;
}

Tensor3 gen_random_tensor(const FieldPtr& F, int n, double density, uint64_t seed) {
  FormMatrix M = gen_random(F, 3, n, 1, 1, density, seed);
  return Tensor3{M.at(0, 0)};
}

}  // namespace mlrank
