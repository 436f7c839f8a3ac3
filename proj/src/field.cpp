#include "mlrank/field.hpp"

#include <algorithm>
#include <sstream>

#include "mlrank/errors.hpp"

namespace mlrank {

namespace {

int64_t mod_p(int64_t v, int64_t p) {
  int64_t r = v % p;
  return r < 0 ? r + p : r;
}

int64_t inv_mod_p(int64_t a, int64_t p) {
  // extended Euclid
  int64_t t = 0, nt = 1, r = p, nr = mod_p(a, p);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  check_internal(r == 1, "not invertible mod p");
  return mod_p(t, p);
}

// dense univariate polynomials over F_p, constant term first, used only for
// modulus search and validation
using PolyP = std::vector<int64_t>;

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP poly_rem(PolyP a, const PolyP& b, int64_t p) {
  // b monic after normalization
  PolyP bb = b;
  trim(bb);
  int64_t lead_inv = inv_mod_p(bb.back(), p);
  trim(a);
  while (a.size() >= bb.size() && !a.empty()) {
    int64_t c = mod_p(a.back() * lead_inv, p);
    size_t shift = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i)
      a[shift + i] = mod_p(a[shift + i] - c * bb[i], p);
    trim(a);
  }
  return a;
}

bool is_irreducible(const PolyP& f, int64_t p, int k) {
  // exhaustive search for a monic factor of degree 1..k/2
  for (int d = 1; 2 * d <= k; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) {
      count *= p;
      require(count <= (int64_t)1 << 40, "irreducibility search out of budget");
    }
    for (int64_t code = 0; code < count; ++code) {
      PolyP g(d + 1, 0);
      int64_t c = code;
      for (int i = 0; i < d; ++i) { g[i] = c % p; c /= p; }
      g[d] = 1;
      PolyP r = poly_rem(f, g, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(int64_t p, int k, std::vector<int64_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < k; ++i) {
    require(q_ <= ((int64_t)1 << 60) / p, "field cardinality out of range");
    q_ *= p;
  }
}

FieldPtr FieldCtx::make(int64_t p, int k) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  require(k >= 1, "extension degree must be >= 1");
  if (k == 1) return FieldPtr(new FieldCtx(p, 1, {}));
  // smallest monic irreducible by coefficient code
  int64_t count = 1;
  for (int i = 0; i < k; ++i) {
    require(count <= ((int64_t)1 << 40) / p, "modulus search out of budget");
    count *= p;
  }
  for (int64_t code = 0; code < count; ++code) {
    std::vector<int64_t> f(k + 1, 0);
    int64_t c = code;
    for (int i = 0; i < k; ++i) { f[i] = c % p; c /= p; }
    f[k] = 1;
    if (is_irreducible(f, p, k)) return FieldPtr(new FieldCtx(p, k, std::move(f)));
  }
  throw internal_error("no irreducible polynomial found");
}

FieldPtr FieldCtx::make_with_modulus(int64_t p, int k, std::vector<int64_t> modulus) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  require(k >= 1, "extension degree must be >= 1");
  if (k == 1) {
    require(modulus.empty(), "prime field carries no modulus");
    return FieldPtr(new FieldCtx(p, 1, {}));
  }
  require((int)modulus.size() == k + 1, "modulus must have k+1 coefficients");
  for (auto& c : modulus) {
    require(c >= 0 && c < p, "modulus coefficient out of range");
  }
  require(modulus[k] == 1, "modulus must be monic");
  require(is_irreducible(modulus, p, k), "modulus is reducible");
  return FieldPtr(new FieldCtx(p, k, std::move(modulus)));
}

FieldPtr FieldCtx::make_from_q(int64_t q) {
  require(q >= 2, "field size must be >= 2");
  int64_t p = 2;
  while (q % p != 0) {
    ++p;
    require(p * p <= q || p <= q, "not a prime power");
  }
  int k = 0;
  int64_t m = q;
  while (m % p == 0) { m /= p; ++k; }
  require(m == 1, std::to_string(q) + " is not a prime power");
  return make(p, k);
}

FieldElem FieldCtx::zero() const {
  return FieldElem(shared_from_this(), std::vector<int64_t>(k_, 0));
}

FieldElem FieldCtx::one() const { return from_scalar(1); }

FieldElem FieldCtx::from_scalar(int64_t v) const {
  std::vector<int64_t> c(k_, 0);
  c[0] = mod_p(v, p_);
  return FieldElem(shared_from_this(), std::move(c));
}

FieldElem FieldCtx::from_int(int64_t code) const {
  require(code >= 0 && code < q_, "element code out of range");
  std::vector<int64_t> c(k_, 0);
  for (int i = 0; i < k_; ++i) { c[i] = code % p_; code /= p_; }
  return FieldElem(shared_from_this(), std::move(c));
}

int64_t FieldCtx::code(const FieldElem& a) const {
  int64_t code = 0;
  for (int i = k_ - 1; i >= 0; --i) code = code * p_ + a.coords()[i];
  return code;
}

bool FieldCtx::same(const FieldCtx& other) const {
  return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) {
    os << " = F_" << p_ << "[t]/(";
    bool first = true;
    for (int i = k_; i >= 0; --i) {
      if (modulus_.size() > size_t(i) ? modulus_[i] == 0 : false) continue;
      if (i == k_ || modulus_[i] != 0) {
        if (!first) os << "+";
        first = false;
        int64_t c = (i == k_) ? 1 : modulus_[i];
        if (i == 0) os << c;
        else {
          if (c != 1) os << c << "*";
          os << "t";
          if (i > 1) os << "^" << i;
        }
      }
    }
    os << ")";
  }
  return os.str();
}

std::vector<int64_t> FieldCtx::add_raw(const std::vector<int64_t>& a,
                                       const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(k_);
  for (int i = 0; i < k_; ++i) r[i] = mod_p(a[i] + b[i], p_);
  return r;
}

std::vector<int64_t> FieldCtx::sub_raw(const std::vector<int64_t>& a,
                                       const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(k_);
  for (int i = 0; i < k_; ++i) r[i] = mod_p(a[i] - b[i], p_);
  return r;
}

std::vector<int64_t> FieldCtx::mul_raw(const std::vector<int64_t>& a,
                                       const std::vector<int64_t>& b) const {
  if (k_ == 1) return {mod_p(a[0] * b[0], p_)};
  std::vector<int64_t> prod(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] = mod_p(prod[i + j] + a[i] * b[j], p_);
  }
  // reduce modulo the monic modulus
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    int64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k_; ++i)
      prod[d - k_ + i] = mod_p(prod[d - k_ + i] - c * modulus_[i], p_);
  }
  prod.resize(k_);
  return prod;
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(FieldPtr F, std::vector<int64_t> coords)
    : F_(std::move(F)), c_(std::move(coords)) {
  require(F_ != nullptr, "element without field context");
  require((int)c_.size() == F_->k(), "coordinate vector has wrong length");
  for (auto v : c_) require(v >= 0 && v < F_->p(), "coordinate out of range");
}

bool FieldElem::is_zero() const {
  for (auto v : c_) if (v != 0) return false;
  return true;
}

bool FieldElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
  return true;
}

namespace {
void require_same(const FieldElem& a, const FieldElem& b) {
  require(a.field() && b.field() && a.field()->same(*b.field()),
          "field context mismatch");
}
}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field()->add_raw(a.coords(), b.coords()));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field()->sub_raw(a.coords(), b.coords()));
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field(), a.field()->mul_raw(a.coords(), b.coords()));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

FieldElem FieldElem::operator-() const {
  return FieldElem(F_, F_->sub_raw(std::vector<int64_t>(F_->k(), 0), c_));
}

FieldElem FieldElem::pow(uint64_t e) const {
  FieldElem r = F_->one();
  FieldElem b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FieldElem FieldElem::inv() const {
  require(!is_zero(), "inversion of zero");
  return pow(uint64_t(F_->q() - 2));
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return a.c_ == b.c_;
}

bool operator<(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return a.field()->code(a) < b.field()->code(b);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a && b && a->same(*b);
}

// ---------------------------------------------------------------------------
// ExtensionMap

namespace {

// rank of a set of F_p column vectors, by elimination; optionally returns the
// row-reduced basis for span membership tests
int rank_mod_p(std::vector<std::vector<int64_t>> cols, int64_t p) {
  int rank = 0;
  size_t dim = cols.empty() ? 0 : cols[0].size();
  for (size_t r = 0; r < dim && rank < (int)cols.size(); ++r) {
    int pivot = -1;
    for (size_t c = rank; c < cols.size(); ++c)
      if (cols[c][r] != 0) { pivot = (int)c; break; }
    if (pivot < 0) continue;
    std::swap(cols[rank], cols[pivot]);
    int64_t inv = inv_mod_p(cols[rank][r], p);
    for (size_t c = 0; c < cols.size(); ++c) {
      if ((int)c == rank || cols[c][r] == 0) continue;
      int64_t f = mod_p(cols[c][r] * inv, p);
      for (size_t i = 0; i < dim; ++i)
        cols[c][i] = mod_p(cols[c][i] - f * cols[rank][i], p);
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<int64_t>> invert_mod_p(std::vector<std::vector<int64_t>> m,
                                               int64_t p) {
  size_t n = m.size();
  std::vector<std::vector<int64_t>> inv(n, std::vector<int64_t>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    check_internal(pivot < n, "singular basis matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    int64_t f = inv_mod_p(m[col][col], p);
    for (size_t j = 0; j < n; ++j) {
      m[col][j] = mod_p(m[col][j] * f, p);
      inv[col][j] = mod_p(inv[col][j] * f, p);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      int64_t g = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] = mod_p(m[r][j] - g * m[col][j], p);
        inv[r][j] = mod_p(inv[r][j] - g * inv[col][j], p);
      }
    }
  }
  return inv;
}

}  // namespace

ExtensionMap::ExtensionMap(FieldPtr sub, FieldPtr super)
    : sub_(std::move(sub)), super_(std::move(super)) {
  require(sub_ && super_, "null field context");
  require(sub_->p() == super_->p(), "fields have different characteristic");
  require(super_->k() % sub_->k() == 0,
          "not an extension: degree " + std::to_string(super_->k()) +
              " not divisible by " + std::to_string(sub_->k()));
  e_ = super_->k() / sub_->k();
  int64_t p = sub_->p();
  int K = super_->k();

  // image of the subfield generator: smallest root of sub's modulus in super
  if (sub_->k() == 1) {
    root_ = super_->one();
  } else {
    bool found = false;
    for (int64_t code = 0; code < super_->q(); ++code) {
      FieldElem cand = super_->from_int(code);
      // evaluate sub's modulus at cand in super
      FieldElem acc = super_->zero();
      FieldElem pw = super_->one();
      for (int i = 0; i <= sub_->k(); ++i) {
        int64_t c = (i == sub_->k()) ? 1 : sub_->modulus()[i];
        if (c != 0) acc = acc + super_->from_scalar(c) * pw;
        pw = pw * cand;
      }
      if (acc.is_zero()) { root_ = cand; found = true; break; }
    }
    check_internal(found, "no root of subfield modulus in extension");
  }

  // greedy subfield-basis of super, gamma_1 = 1: a new candidate is accepted
  // if {embed(omega^u) * gamma_m} stays F_p-independent
  std::vector<std::vector<int64_t>> cols;
  auto push_cols_for = [&](const FieldElem& gamma, std::vector<std::vector<int64_t>>& out) {
    FieldElem pw = super_->one();
    for (int u = 0; u < sub_->k(); ++u) {
      out.push_back((gamma * pw).coords());
      pw = pw * root_;
    }
  };
  basis_.clear();
  for (int64_t code = 1; code < super_->q() && (int)basis_.size() < e_; ++code) {
    FieldElem cand = super_->from_int(code);
    std::vector<std::vector<int64_t>> trial = cols;
    push_cols_for(cand, trial);
    if (rank_mod_p(trial, p) == (int)trial.size()) {
      basis_.push_back(cand);
      cols = std::move(trial);
    }
  }
  check_internal((int)basis_.size() == e_, "could not build extension basis");
  check_internal(basis_[0].is_one(), "extension basis does not start at 1");

  // invert the K x K matrix whose column (m,u) is coords(gamma_m * root^u)
  std::vector<std::vector<int64_t>> mat(K, std::vector<int64_t>(K, 0));
  for (int m = 0; m < e_; ++m) {
    FieldElem pw = super_->one();
    for (int u = 0; u < sub_->k(); ++u) {
      auto col = (basis_[m] * pw).coords();
      for (int r = 0; r < K; ++r) mat[r][m * sub_->k() + u] = col[r];
      pw = pw * root_;
    }
  }
  inv_ = invert_mod_p(std::move(mat), p);
}

FieldElem ExtensionMap::embed(const FieldElem& a) const {
  require(same_field(a.field(), sub_), "element not in the subfield context");
  FieldElem acc = super_->zero();
  FieldElem pw = super_->one();
  for (int u = 0; u < sub_->k(); ++u) {
    int64_t c = a.coords()[u];
    if (c != 0) acc = acc + super_->from_scalar(c) * pw;
    pw = pw * root_;
  }
  return acc;
}

std::vector<FieldElem> ExtensionMap::decompose(const FieldElem& x) const {
  require(same_field(x.field(), super_), "element not in the extension context");
  int64_t p = sub_->p();
  int K = super_->k();
  std::vector<int64_t> y(K, 0);
  for (int r = 0; r < K; ++r) {
    int64_t s = 0;
    for (int cidx = 0; cidx < K; ++cidx) s += inv_[r][cidx] * x.coords()[cidx];
    y[r] = mod_p(s, p);
  }
  std::vector<FieldElem> out;
  out.reserve(e_);
  for (int m = 0; m < e_; ++m) {
    std::vector<int64_t> coords(sub_->k());
    for (int u = 0; u < sub_->k(); ++u) coords[u] = y[m * sub_->k() + u];
    out.emplace_back(sub_, std::move(coords));
  }
  return out;
}

FieldElem ExtensionMap::project(const FieldElem& x) const { return decompose(x)[0]; }

bool ExtensionMap::in_base(const FieldElem& x) const {
  auto d = decompose(x);
  for (int m = 1; m < e_; ++m)
    if (!d[m].is_zero()) return false;
  return true;
}

}  // namespace mlrank
