#include "mlrank/mform.hpp"

#include <algorithm>
#include <sstream>

#include "mlrank/errors.hpp"

namespace mlrank {

namespace {

bool sorted_unique(const std::vector<int>& v) {
  for (size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] >= v[i + 1]) return false;
  return v.empty() || v.front() >= 1;
}

}  // namespace

MultilinearForm::MultilinearForm(FieldPtr F, std::vector<int> blocks, int n)
    : F_(std::move(F)), blocks_(std::move(blocks)), n_(n) {
  require(F_ != nullptr, "form without field context");
  require(n_ >= 1 || blocks_.empty(), "n must be >= 1");
  if (n_ < 1) n_ = 1;
  require(sorted_unique(blocks_), "block labels must be sorted, unique, positive");
}

MultilinearForm MultilinearForm::scalar(FieldPtr F, int n, const FieldElem& c) {
  MultilinearForm f(std::move(F), {}, n);
  f.add_term({}, c);
  return f;
}

MultilinearForm MultilinearForm::monomial(FieldPtr F, std::vector<int> blocks, int n,
                                          const Index& idx, const FieldElem& coef) {
  MultilinearForm f(std::move(F), std::move(blocks), n);
  f.add_term(idx, coef);
  return f;
}

FieldElem MultilinearForm::coeff(const Index& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? F_->zero() : it->second;
}

FieldElem MultilinearForm::scalar_value() const {
  require(blocks_.empty(), "scalar_value on a non-scalar form");
  return coeff({});
}

void MultilinearForm::add_term(const Index& idx, const FieldElem& c) {
  require(idx.size() == blocks_.size(), "index tuple length mismatch");
  for (auto i : idx) require(i >= 1 && i <= n_, "variable index out of range");
  require(same_field(c.field(), F_), "coefficient from wrong field");
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(idx, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultilinearForm MultilinearForm::scale(const FieldElem& c) const {
  MultilinearForm r(F_, blocks_, n_);
  if (c.is_zero()) return r;
  for (const auto& [idx, v] : terms_) r.terms_.emplace(idx, v * c);
  return r;
}

MultilinearForm operator+(const MultilinearForm& a, const MultilinearForm& b) {
  require(same_field(a.F_, b.F_), "field context mismatch");
  require(a.blocks_ == b.blocks_ && a.n_ == b.n_, "forms on different block sets");
  MultilinearForm r = a;
  for (const auto& [idx, v] : b.terms_) r.add_term(idx, v);
  return r;
}

MultilinearForm operator-(const MultilinearForm& a, const MultilinearForm& b) {
  return a + (-b);
}

MultilinearForm MultilinearForm::operator-() const {
  MultilinearForm r(F_, blocks_, n_);
  for (const auto& [idx, v] : terms_) r.terms_.emplace(idx, -v);
  return r;
}

bool operator==(const MultilinearForm& a, const MultilinearForm& b) {
  require(same_field(a.F_, b.F_), "field context mismatch");
  return a.blocks_ == b.blocks_ && a.n_ == b.n_ && a.terms_ == b.terms_;
}

FieldElem eval(const MultilinearForm& f, const Assignment& point) {
  for (auto b : f.blocks())
    require(point.count(b), "assignment missing block " + std::to_string(b));
  require(point.size() == f.blocks().size(), "assignment covers extra blocks");
  MultilinearForm v = partial_eval(f, point);
  return v.scalar_value();
}

MultilinearForm partial_eval(const MultilinearForm& f, const Assignment& sub) {
  const auto& blocks = f.blocks();
  std::vector<int> keep;
  std::vector<int> positions_sub;  // positions within the index tuple
  std::vector<int> positions_keep;
  for (size_t pos = 0; pos < blocks.size(); ++pos) {
    if (sub.count(blocks[pos]))
      positions_sub.push_back((int)pos);
    else {
      keep.push_back(blocks[pos]);
      positions_keep.push_back((int)pos);
    }
  }
  for (const auto& [b, vec] : sub) {
    require(std::binary_search(blocks.begin(), blocks.end(), b),
            "assignment names block " + std::to_string(b) + " outside the form");
    require((int)vec.size() == f.n(), "assigned vector has wrong length");
    for (const auto& c : vec)
      require(same_field(c.field(), f.field()), "assigned vector from wrong field");
  }
  MultilinearForm out(f.field(), keep, f.n());
  for (const auto& [idx, c] : f.terms()) {
    FieldElem factor = c;
    for (int pos : positions_sub) {
      factor = factor * sub.at(blocks[pos])[idx[pos] - 1];
      if (factor.is_zero()) break;
    }
    if (factor.is_zero()) continue;
    Index rem;
    rem.reserve(positions_keep.size());
    for (int pos : positions_keep) rem.push_back(idx[pos]);
    out.add_term(rem, factor);
  }
  return out;
}

MultilinearForm mul_disjoint(const MultilinearForm& f, const MultilinearForm& g) {
  require(same_field(f.field(), g.field()), "field context mismatch");
  require(f.n() == g.n(), "forms with different n");
  std::vector<int> merged;
  std::merge(f.blocks().begin(), f.blocks().end(), g.blocks().begin(), g.blocks().end(),
             std::back_inserter(merged));
  for (size_t i = 0; i + 1 < merged.size(); ++i)
    require(merged[i] != merged[i + 1], "blocks overlap in disjoint product");

  // position of each merged slot: from f (with its position) or from g
  std::vector<std::pair<bool, int>> origin;  // (from_f, source position)
  {
    size_t fi = 0, gi = 0;
    while (fi < f.blocks().size() || gi < g.blocks().size()) {
      if (gi == g.blocks().size() ||
          (fi < f.blocks().size() && f.blocks()[fi] < g.blocks()[gi]))
        origin.emplace_back(true, (int)fi++);
      else
        origin.emplace_back(false, (int)gi++);
    }
  }

  MultilinearForm out(f.field(), merged, f.n());
  for (const auto& [fi_idx, fc] : f.terms()) {
    for (const auto& [gi_idx, gc] : g.terms()) {
      Index idx(origin.size());
      for (size_t s = 0; s < origin.size(); ++s)
        idx[s] = origin[s].first ? fi_idx[origin[s].second] : gi_idx[origin[s].second];
      out.add_term(idx, fc * gc);
    }
  }
  return out;
}

MultilinearForm relabel_blocks(const MultilinearForm& f, const std::map<int, int>& rename) {
  std::vector<std::pair<int, int>> pairs;  // (new label, old position)
  for (size_t pos = 0; pos < f.blocks().size(); ++pos) {
    int b = f.blocks()[pos];
    auto it = rename.find(b);
    require(it != rename.end(), "relabel map missing block " + std::to_string(b));
    pairs.emplace_back(it->second, (int)pos);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<int> new_blocks;
  for (auto& [nb, pos] : pairs) new_blocks.push_back(nb);
  MultilinearForm out(f.field(), new_blocks, f.n());
  for (const auto& [idx, c] : f.terms()) {
    Index nidx(pairs.size());
    for (size_t s = 0; s < pairs.size(); ++s) nidx[s] = idx[pairs[s].second];
    out.add_term(nidx, c);
  }
  return out;
}

MultilinearForm substitute_block_raw(const MultilinearForm& f, int block,
                                     const std::vector<VecF>& L) {
  const auto& blocks = f.blocks();
  auto it = std::find(blocks.begin(), blocks.end(), block);
  require(it != blocks.end(), "substitution block not present in form");
  int pos = (int)(it - blocks.begin());
  require((int)L.size() == f.n(), "substitution matrix has wrong size");
  for (const auto& row : L) require((int)row.size() == f.n(), "substitution matrix not square");

  MultilinearForm out(f.field(), blocks, f.n());
  for (const auto& [idx, c] : f.terms()) {
    int j = idx[pos];  // x_{block, j} -> sum_t L[j-1][t] x_{block, t+1}
    for (int t = 0; t < f.n(); ++t) {
      const FieldElem& l = L[j - 1][t];
      if (l.is_zero()) continue;
      Index nidx = idx;
      nidx[pos] = t + 1;
      out.add_term(nidx, c * l);
    }
  }
  return out;
}

std::string pretty(const MultilinearForm& f) {
  if (f.is_zero()) return "0";
  static const char* greek[] = {"α", "β", "γ"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool coef_one = c.is_one();
    if (!coef_one || idx.empty()) {
      if (c.field()->k() == 1) os << c.coords()[0];
      else {
        os << "(";
        for (size_t i = 0; i < c.coords().size(); ++i) {
          if (i) os << ",";
          os << c.coords()[i];
        }
        os << ")";
      }
      if (!idx.empty()) os << "·";
    }
    for (size_t s = 0; s < idx.size(); ++s) {
      int b = f.blocks()[s];
      if (b >= 1 && b <= 3 && f.blocks().size() <= 3 && f.blocks().back() <= 3)
        os << greek[b - 1] << idx[s];
      else
        os << "x" << b << "_" << idx[s];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(FieldPtr F, int nvars) : F_(std::move(F)), nvars_(nvars) {
  require(F_ != nullptr, "polynomial without field context");
  require(nvars_ >= 0, "negative variable count");
}

Poly Poly::constant(FieldPtr F, int nvars, const FieldElem& c) {
  Poly f(std::move(F), nvars);
  f.add_term(std::vector<int32_t>(nvars, 0), c);
  return f;
}

Poly Poly::variable(FieldPtr F, int nvars, int var) {
  require(var >= 0 && var < nvars, "variable index out of range");
  Poly f(F, nvars);
  std::vector<int32_t> e(nvars, 0);
  e[var] = 1;
  f.add_term(e, F->one());
  return f;
}

void Poly::add_term(const std::vector<int32_t>& exp, const FieldElem& c) {
  require((int)exp.size() == nvars_, "exponent vector length mismatch");
  for (auto e : exp) require(e >= 0, "negative exponent");
  require(same_field(c.field(), F_), "coefficient from wrong field");
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(exp, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  require(same_field(a.F_, b.F_) && a.nvars_ == b.nvars_, "polynomial context mismatch");
  Poly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly r(F_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::scale(const FieldElem& c) const {
  Poly r(F_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require(same_field(a.F_, b.F_) && a.nvars_ == b.nvars_, "polynomial context mismatch");
  Poly r(a.F_, a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int32_t> e(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  require(same_field(a.F_, b.F_), "polynomial context mismatch");
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::derivative(int var) const {
  require(var >= 0 && var < nvars_, "variable index out of range");
  Poly r(F_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    FieldElem nc = c * F_->from_scalar(e[var]);
    if (nc.is_zero()) continue;
    std::vector<int32_t> ne = e;
    ne[var] -= 1;
    r.add_term(ne, nc);
  }
  return r;
}

Poly Poly::shift(const VecF& p) const {
  require((int)p.size() == nvars_, "shift point has wrong dimension");
  Poly r(F_, nvars_);
  for (const auto& [e, c] : terms_) {
    // expand prod_i (x_i + p_i)^{e_i}
    Poly term = Poly::constant(F_, nvars_, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      Poly base(F_, nvars_);
      std::vector<int32_t> xe(nvars_, 0);
      xe[i] = 1;
      base.add_term(xe, F_->one());
      base.add_term(std::vector<int32_t>(nvars_, 0), p[i]);
      for (int rep = 0; rep < e[i]; ++rep) term = term * base;
    }
    r = r + term;
  }
  return r;
}

FieldElem Poly::eval(const VecF& p) const {
  require((int)p.size() == nvars_, "evaluation point has wrong dimension");
  FieldElem acc = F_->zero();
  for (const auto& [e, c] : terms_) {
    FieldElem t = c;
    for (int i = 0; i < nvars_ && !t.is_zero(); ++i) {
      for (int rep = 0; rep < e[i]; ++rep) t = t * p[i];
    }
    acc = acc + t;
  }
  return acc;
}

std::optional<int> Poly::min_degree() const {
  std::optional<int> best;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<int> Poly::total_degree() const {
  std::optional<int> best;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    if (!best || d > *best) best = d;
  }
  return best;
}

Poly form_to_poly(const MultilinearForm& f, int d, int n) {
  require(f.n() <= n, "inconsistent n");
  for (auto b : f.blocks()) require(b >= 1 && b <= d, "block label outside 1..d");
  Poly r(f.field(), d * n);
  for (const auto& [idx, c] : f.terms()) {
    std::vector<int32_t> e(d * n, 0);
    for (size_t s = 0; s < idx.size(); ++s)
      e[(f.blocks()[s] - 1) * n + (idx[s] - 1)] = 1;
    r.add_term(e, c);
  }
  return r;
}

std::optional<std::vector<int>> block_degrees(const Poly& f, int d, int n) {
  require(f.nvars() == d * n, "polynomial has wrong variable count");
  std::vector<int> deg(d, 0);
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> cur(d, 0);
    for (int b = 0; b < d; ++b)
      for (int j = 0; j < n; ++j) cur[b] += e[b * n + j];
    if (first) { deg = cur; first = false; }
    else if (cur != deg) return std::nullopt;
  }
  return deg;
}

}  // namespace mlrank
