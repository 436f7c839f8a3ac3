#include "mlrank/localring.hpp"

#include <algorithm>

#include "mlrank/errors.hpp"

namespace mlrank {

namespace {

std::vector<int> mask_blocks(uint32_t mask) {
  std::vector<int> blocks;
  for (int b = 1; mask; ++b, mask >>= 1)
    if (mask & 1) blocks.push_back(b);
  return blocks;
}

void require_compatible(const LocalElem& a, const LocalElem& b) {
  require(same_field(a.field(), b.field()), "field context mismatch");
  require(a.d() == b.d() && a.n() == b.n(), "local elements of different shape");
  require(a.base_point().size() == b.base_point().size(), "base point mismatch");
  for (size_t i = 0; i < a.base_point().size(); ++i)
    for (size_t j = 0; j < a.base_point()[i].size(); ++j)
      require(a.base_point()[i][j] == b.base_point()[i][j], "base point mismatch");
}

}  // namespace

LocalElem::LocalElem(FieldPtr F, int d, int n, Point p)
    : F_(std::move(F)), d_(d), n_(n), p_(std::move(p)) {
  require(F_ != nullptr, "local element without field context");
  require(d_ >= 0 && d_ < 31, "d out of range");
  require((int)p_.size() == d_, "base point has wrong number of blocks");
  for (const auto& vec : p_) {
    require((int)vec.size() == n_, "base point vector has wrong length");
    for (const auto& v : vec)
      require(same_field(v.field(), F_), "base point from wrong field");
  }
}

LocalElem LocalElem::constant(FieldPtr F, int d, int n, Point p, const FieldElem& c) {
  LocalElem e(std::move(F), d, n, std::move(p));
  if (!c.is_zero()) e.set_component(0, MultilinearForm::scalar(e.F_, n, c));
  return e;
}

MultilinearForm LocalElem::component(uint32_t mask) const {
  auto it = comps_.find(mask);
  if (it != comps_.end()) return it->second;
  return MultilinearForm(F_, mask_blocks(mask), n_);
}

void LocalElem::set_component(uint32_t mask, MultilinearForm f) {
  require(mask <= full_mask(), "component mask out of range");
  require(f.blocks() == mask_blocks(mask), "component on wrong block set");
  require(f.n() == n_, "component with wrong n");
  if (f.is_zero())
    comps_.erase(mask);
  else
    comps_[mask] = std::move(f);
}

bool LocalElem::is_zero() const { return comps_.empty(); }

bool operator==(const LocalElem& a, const LocalElem& b) {
  require_compatible(a, b);
  return a.comps_ == b.comps_;
}

LocalElem expand(const MultilinearForm& f, const Point& p) {
  int d = (int)p.size();
  require((int)f.blocks().size() == d &&
              (d == 0 || (f.blocks().front() == 1 && f.blocks().back() == d)),
          "expand requires a form on blocks 1..d");
  LocalElem out(f.field(), d, f.n(), p);
  uint32_t full = out.full_mask();
  for (uint32_t mask = 0; mask <= full; ++mask) {
    Assignment sub;
    for (int b = 1; b <= d; ++b)
      if (!(mask & (1u << (b - 1)))) sub[b] = p[b - 1];
    out.set_component(mask, partial_eval(f, sub));
    if (full == 0) break;
  }
  return out;
}

LocalElem expand_poly(const Poly& f, int d, int n, const Point& p) {
  require(f.nvars() == d * n, "polynomial has wrong variable count");
  require((int)p.size() == d, "base point has wrong number of blocks");
  LocalElem out(f.field(), d, n, p);
  const FieldPtr& F = f.field();
  for (const auto& [e, c] : f.terms()) {
    // per block: value at p and the directional-derivative linear form
    std::vector<FieldElem> val(d, F->one());
    std::vector<MultilinearForm> lin;
    lin.reserve(d);
    for (int b = 0; b < d; ++b) {
      FieldElem prod = F->one();
      for (int j = 0; j < n; ++j) {
        int ex = e[b * n + j];
        for (int rep = 0; rep < ex; ++rep) prod = prod * p[b][j];
      }
      val[b] = prod;
      MultilinearForm l(F, {b + 1}, n);
      for (int j = 0; j < n; ++j) {
        int ex = e[b * n + j];
        if (ex == 0) continue;
        // e * p_{b,j}^{e-1} * prod_{j' != j} p_{b,j'}^{e_{j'}}
        FieldElem coef = F->from_scalar(ex);
        for (int rep = 0; rep < ex - 1; ++rep) coef = coef * p[b][j];
        for (int j2 = 0; j2 < n; ++j2) {
          if (j2 == j) continue;
          int ex2 = e[b * n + j2];
          for (int rep = 0; rep < ex2; ++rep) coef = coef * p[b][j2];
        }
        l.add_term({int32_t(j + 1)}, coef);
      }
      lin.push_back(std::move(l));
    }
    uint32_t full = out.full_mask();
    for (uint32_t mask = 0; mask <= full; ++mask) {
      FieldElem scal = c;
      for (int b = 0; b < d; ++b)
        if (!(mask & (1u << b))) scal = scal * val[b];
      if (scal.is_zero()) continue;
      MultilinearForm piece = MultilinearForm::scalar(F, n, scal);
      bool dead = false;
      for (int b = 0; b < d && !dead; ++b) {
        if (!(mask & (1u << b))) continue;
        if (lin[b].is_zero()) { dead = true; break; }
        piece = mul_disjoint(piece, lin[b]);
      }
      if (dead) continue;
      MultilinearForm cur = out.component(mask);
      out.set_component(mask, cur + piece);
      if (full == 0) break;
    }
  }
  return out;
}

LocalElem lr_add(const LocalElem& a, const LocalElem& b) {
  require_compatible(a, b);
  LocalElem out = a;
  for (const auto& [mask, f] : b.components())
    out.set_component(mask, out.component(mask) + f);
  return out;
}

LocalElem lr_sub(const LocalElem& a, const LocalElem& b) { return lr_add(a, lr_neg(b)); }

LocalElem lr_neg(const LocalElem& a) {
  LocalElem out(a.field(), a.d(), a.n(), a.base_point());
  for (const auto& [mask, f] : a.components()) out.set_component(mask, -f);
  return out;
}

LocalElem lr_scale(const LocalElem& a, const FieldElem& c) {
  LocalElem out(a.field(), a.d(), a.n(), a.base_point());
  if (c.is_zero()) return out;
  for (const auto& [mask, f] : a.components()) out.set_component(mask, f.scale(c));
  return out;
}

LocalElem lr_mul(const LocalElem& a, const LocalElem& b) {
  require_compatible(a, b);
  LocalElem out(a.field(), a.d(), a.n(), a.base_point());
  for (const auto& [ma, fa] : a.components()) {
    for (const auto& [mb, fb] : b.components()) {
      if (ma & mb) continue;  // one nilpotent direction per block
      uint32_t m = ma | mb;
      out.set_component(m, out.component(m) + mul_disjoint(fa, fb));
    }
  }
  return out;
}

LocalElem lr_inv(const LocalElem& a) {
  MultilinearForm c0 = a.component(0);
  FieldElem c = c0.scalar_value();
  require(!c.is_zero(), "not a unit at the base point");
  FieldElem cinv = c.inv();
  // a = c (1 + N), N nilpotent of order d+1:
  // a^{-1} = c^{-1} sum_{j=0}^{d} (-c^{-1} (a - c))^j
  LocalElem nil = a;
  nil.set_component(0, MultilinearForm(a.field(), {}, a.n()));
  LocalElem x = lr_scale(nil, -cinv);
  LocalElem acc = LocalElem::constant(a.field(), a.d(), a.n(), a.base_point(),
                                      a.field()->one());
  LocalElem pw = acc;
  for (int j = 1; j <= a.d(); ++j) {
    pw = lr_mul(pw, x);
    if (pw.is_zero()) break;
    acc = lr_add(acc, pw);
  }
  return lr_scale(acc, cinv);
}

MultilinearForm approx_extract(const LocalElem& a) { return a.component(a.full_mask()); }

MultilinearForm approx_derivative_oracle(const Poly& num, const Poly& den, int d, int n,
                                         const Point& p) {
  require(d >= 0 && n >= 1, "bad dimensions");
  require(d * n <= 6, "derivative oracle limited to d*n <= 6 variables");
  require(num.nvars() == d * n && den.nvars() == d * n, "variable count mismatch");
  require(!den.is_zero(), "zero denominator");

  auto ndeg = block_degrees(num, d, n);
  auto ddeg = block_degrees(den, d, n);
  require(ndeg && ddeg, "num/den must be homogeneous in every block");
  if (!num.is_zero()) {
    for (int b = 0; b < d; ++b)
      require((*ndeg)[b] - (*ddeg)[b] == 1, "num/den must have degree 1 per block");
  }

  VecF pf;
  for (const auto& vec : p)
    for (const auto& v : vec) pf.push_back(v);
  require((int)pf.size() == d * n, "base point has wrong shape");
  require(!den.eval(pf).is_zero(), "denominator vanishes at the base point");

  std::vector<int> blocks(d);
  for (int b = 0; b < d; ++b) blocks[b] = b + 1;
  MultilinearForm out(num.field(), blocks, n);
  if (num.is_zero()) return out;

  // mixed partial d^d (num/den) / dx_{1,i_1} ... dx_{d,i_d}, one variable per
  // block, via the quotient rule on (N, D) pairs
  std::vector<int32_t> idx(d, 1);
  for (;;) {
    Poly N = num, D = den;
    for (int b = 0; b < d; ++b) {
      int var = b * n + (idx[b] - 1);
      Poly Nd = N.derivative(var) * D - N * D.derivative(var);
      D = D * D;
      N = std::move(Nd);
    }
    FieldElem value = N.eval(pf) / D.eval(pf);
    if (!value.is_zero()) out.add_term(Index(idx.begin(), idx.end()), value);
    // odometer over [n]^d
    int b = d - 1;
    while (b >= 0 && idx[b] == n) { idx[b] = 1; --b; }
    if (b < 0) break;
    ++idx[b];
  }
  return out;
}

}  // namespace mlrank
