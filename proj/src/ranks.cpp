#include "mlrank/ranks.hpp"

#include <algorithm>
#include <vector>

#include "mlrank/errors.hpp"
#include "mlrank/parallel.hpp"
#include "mlrank/polyops.hpp"
#include "mlrank/prng.hpp"

namespace mlrank {

MaxRankResult max_rank_exhaustive(const FormMatrix& M, uint64_t budget) {
  uint64_t total = num_points(M.field(), M.d(), M.n(), budget);
  int chunks = std::min<int>(thread_cap(), 8);
  std::vector<int> best_rank(chunks, -1);
  std::vector<uint64_t> best_code(chunks, 0);
  run_chunked(total, chunks, [&](int c, uint64_t begin, uint64_t end) {
    for (uint64_t code = begin; code < end; ++code) {
      Point p = point_from_code(M.field(), M.d(), M.n(), code);
      int r = scalar_rank(eval_matrix(M, p)).rank;
      if (r > best_rank[c]) { best_rank[c] = r; best_code[c] = code; }
    }
  });
  MaxRankResult out;
  out.exact = true;
  int bi = 0;
  for (int c = 1; c < chunks; ++c) {
    if (best_rank[c] > best_rank[bi]) bi = c;  // earlier chunk wins ties
  }
  out.rank = std::max(0, best_rank[bi]);
  out.argmax = point_from_code(M.field(), M.d(), M.n(), best_rank[bi] < 0 ? 0 : best_code[bi]);
  return out;
}

MaxRankResult max_rank_sampled(const FormMatrix& M, int count, uint64_t seed) {
  require(count >= 1, "sample count must be positive");
  Rng rng{seed};
  uint64_t total = 1;
  bool overflow = false;
  uint64_t q = (uint64_t)M.field()->q();
  for (int i = 0; i < M.d() * M.n() && !overflow; ++i) {
    if (total > ((uint64_t)1 << 62) / q) overflow = true;
    else total *= q;
  }
  MaxRankResult out;
  out.exact = false;
  int best = -1;
  uint64_t counter = 0;
  for (int s = 0; s < count; ++s) {
    Point p;
    if (overflow) {
      p.assign(M.d(), VecF(M.n(), M.field()->zero()));
      for (int b = 0; b < M.d(); ++b)
        for (int j = 0; j < M.n(); ++j)
          p[b][j] = M.field()->from_int((int64_t)rng.at_below(counter++, q));
    } else {
      p = point_from_code(M.field(), M.d(), M.n(), rng.at_below(counter++, total));
    }
    int r = scalar_rank(eval_matrix(M, p)).rank;
    bool better = r > best;
    if (r == best && !out.argmax.empty() && !overflow &&
        point_code(M.field(), p) < point_code(M.field(), out.argmax))
      better = true;  // ties by lexicographic point
    if (better) { best = r; out.argmax = std::move(p); }
  }
  out.rank = std::max(0, best);
  return out;
}

Rational avg_rank(const FormMatrix& M, uint64_t budget) {
  uint64_t total = num_points(M.field(), M.d(), M.n(), budget);
  int chunks = std::min<int>(thread_cap(), 8);
  std::vector<int64_t> sums(chunks, 0);
  run_chunked(total, chunks, [&](int c, uint64_t begin, uint64_t end) {
    for (uint64_t code = begin; code < end; ++code) {
      Point p = point_from_code(M.field(), M.d(), M.n(), code);
      sums[c] += scalar_rank(eval_matrix(M, p)).rank;
    }
  });
  int64_t sum = 0;
  for (auto s : sums) sum += s;
  return Rational(sum, (int64_t)total);
}

namespace {

// extension degree m minimal with q^m > bound
int min_extension_degree(int64_t q, int64_t bound) {
  int m = 1;
  __int128 pw = q;
  while (pw <= bound) { pw *= q; ++m; }
  return m;
}

int probe_rank(const FormMatrix& M, int trials, uint64_t seed) {
  // deterministic evaluation lower bound over F_{q^m}
  if (M.d() == 0) return scalar_rank(eval_matrix(M, {})).rank;
  int minab = std::min(M.rows(), M.cols());
  int m = min_extension_degree(M.field()->q(), 2 * (int64_t)M.d() * minab);
  FieldPtr K = FieldCtx::make(M.field()->p(), M.field()->k() * m);
  ExtensionMap ext(M.field(), K);
  FormMatrix MK = embed_matrix(M, ext);
  Rng rng{seed};
  uint64_t counter = 0;
  int best = 0;
  for (int t = 0; t < trials && best < minab; ++t) {
    Point p(MK.d(), VecF(MK.n(), K->zero()));
    for (int b = 0; b < MK.d(); ++b)
      for (int j = 0; j < MK.n(); ++j)
        p[b][j] = K->from_int((int64_t)rng.at_below(counter++, (uint64_t)K->q()));
    best = std::max(best, scalar_rank(eval_matrix(MK, p)).rank);
  }
  return best;
}

}  // namespace

int comm_rank_symbolic(const FormMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  if (M.d() == 0) return scalar_rank(eval_matrix(M, {})).rank;
  if (M.is_zero()) return 0;
  int minab = std::min(M.rows(), M.cols());
  int lower = probe_rank(M, 24, 0x5eedf00dULL);
  if (lower == minab) return minab;

  require(minab <= 5 && M.d() * M.n() <= 12,
          "symbolic minor enumeration out of budget");
  auto P = to_poly_matrix(M);
  auto nonzero_minor_exists = [&](int r) {
    std::vector<int> rows(r), cols(r);
    // enumerate r-subsets of rows and columns
    std::vector<int> rsub(r), csub(r);
    for (int i = 0; i < r; ++i) rsub[i] = i;
    for (;;) {
      for (int i = 0; i < r; ++i) csub[i] = i;
      for (;;) {
        std::vector<std::vector<Poly>> minor(r, std::vector<Poly>(r));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) minor[i][j] = P[rsub[i]][csub[j]];
        if (!det_poly(minor).is_zero()) return true;
        int i = r - 1;
        while (i >= 0 && csub[i] == M.cols() - r + i) --i;
        if (i < 0) break;
        ++csub[i];
        for (int j = i + 1; j < r; ++j) csub[j] = csub[j - 1] + 1;
      }
      int i = r - 1;
      while (i >= 0 && rsub[i] == M.rows() - r + i) --i;
      if (i < 0) break;
      ++rsub[i];
      for (int j = i + 1; j < r; ++j) rsub[j] = rsub[j - 1] + 1;
    }
    return false;
  };
  int r = lower;
  while (r < minab && nonzero_minor_exists(r + 1)) ++r;
  return r;
}

int comm_rank_probabilistic(const FormMatrix& M, int trials, uint64_t seed) {
  require(trials >= 1, "trial count must be positive");
  if (M.d() == 0) return scalar_rank(eval_matrix(M, {})).rank;
  return probe_rank(M, trials, seed ^ 0x9e3779b9ULL);
}

Rational expected_partial_cr(const FormMatrix& M, uint64_t budget) {
  require(M.d() >= 1, "needs at least one block");
  uint64_t total = num_points(M.field(), 1, M.n(), budget);
  int64_t sum = 0;
  for (uint64_t code = 0; code < total; ++code) {
    Point pd = point_from_code(M.field(), 1, M.n(), code);
    Assignment sub;
    sub[M.d()] = pd[0];
    sum += comm_rank_symbolic(partial_eval_matrix(M, sub));
  }
  return Rational(sum, (int64_t)total);
}

namespace {

// all subspaces of F^m as (dimension, basis, membership bitset over element
// codes); q^m must stay tiny
struct Subspace {
  int dim;
  std::vector<VecF> basis;
};

std::vector<Subspace> all_subspaces(const FieldPtr& F, int m) {
  int64_t q = F->q();
  int64_t space = 1;
  for (int i = 0; i < m; ++i) space *= q;
  require(space <= 256, "subspace enumeration out of budget");

  auto vec_code = [&](const VecF& v) {
    int64_t code = 0;
    for (int i = m - 1; i >= 0; --i) code = code * q + F->code(v[i]);
    return code;
  };
  auto vec_from_code = [&](int64_t code) {
    VecF v(m, F->zero());
    for (int i = 0; i < m; ++i) { v[i] = F->from_int(code % q); code /= q; }
    return v;
  };

  // span as a sorted list of member codes
  auto span_of = [&](const std::vector<VecF>& basis) {
    std::vector<int64_t> members;
    int64_t combos = 1;
    for (size_t i = 0; i < basis.size(); ++i) combos *= q;
    for (int64_t cc = 0; cc < combos; ++cc) {
      VecF acc(m, F->zero());
      int64_t c = cc;
      for (const auto& bvec : basis) {
        FieldElem coef = F->from_int(c % q);
        c /= q;
        if (coef.is_zero()) continue;
        for (int i = 0; i < m; ++i) acc[i] = acc[i] + coef * bvec[i];
      }
      members.push_back(vec_code(acc));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
  };

  std::vector<Subspace> out;
  std::vector<std::vector<int64_t>> seen;
  std::vector<std::pair<Subspace, std::vector<int64_t>>> frontier;
  Subspace zero{0, {}};
  std::vector<int64_t> zspan = {0};
  out.push_back(zero);
  seen.push_back(zspan);
  frontier.push_back({zero, zspan});
  while (!frontier.empty()) {
    std::vector<std::pair<Subspace, std::vector<int64_t>>> next;
    for (const auto& [sp, members] : frontier) {
      if (sp.dim == m) continue;
      for (int64_t code = 1; code < space; ++code) {
        if (std::binary_search(members.begin(), members.end(), code)) continue;
        Subspace bigger = sp;
        bigger.basis.push_back(vec_from_code(code));
        bigger.dim = sp.dim + 1;
        auto bspan = span_of(bigger.basis);
        if (std::find(seen.begin(), seen.end(), bspan) != seen.end()) continue;
        seen.push_back(bspan);
        out.push_back(bigger);
        next.push_back({bigger, bspan});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

int pr_exact_d1(const FormMatrix& M) {
  require(M.d() == 1, "oracle defined for d = 1 only");
  require(M.rows() <= 3 && M.cols() <= 3 && M.field()->q() <= 3,
          "exact partition-rank oracle out of budget");
  if (M.is_zero()) return 0;
  const FieldPtr& F = M.field();
  auto left = all_subspaces(F, M.rows());
  auto right = all_subspaces(F, M.cols());
  int best = M.rows() + M.cols();
  for (const auto& U : left) {
    for (const auto& V : right) {
      int r = (M.rows() - U.dim) + (M.cols() - V.dim);
      if (r >= best) continue;
      bool vanish = true;
      for (const auto& u : U.basis) {
        for (const auto& v : V.basis) {
          MultilinearForm acc(F, {1}, M.n());
          for (int i = 0; i < M.rows() && vanish; ++i) {
            if (u[i].is_zero()) continue;
            for (int j = 0; j < M.cols(); ++j) {
              if (v[j].is_zero()) continue;
              acc = acc + M.at(i, j).scale(u[i] * v[j]);
            }
          }
          if (!acc.is_zero()) { vanish = false; break; }
        }
        if (!vanish) break;
      }
      if (vanish) best = r;
    }
  }
  return best;
}

}  // namespace mlrank
