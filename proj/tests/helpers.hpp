#ifndef MLRANK_TESTS_HELPERS_HPP
#define MLRANK_TESTS_HELPERS_HPP

#include <initializer_list>
#include <vector>

#include "mlrank/mlmatrix.hpp"

namespace mlrank::testing {

// form from (index-tuple, coefficient-code) pairs
inline MultilinearForm mk_form(const FieldPtr& F, std::vector<int> blocks, int n,
                               std::initializer_list<std::pair<Index, int64_t>> terms) {
  MultilinearForm f(F, std::move(blocks), n);
  for (const auto& [idx, code] : terms) f.add_term(idx, F->from_int(code));
  return f;
}

inline ScalarMatrix mk_scalar(const FieldPtr& F,
                              std::initializer_list<std::initializer_list<int64_t>> rows) {
  int a = (int)rows.size();
  int b = a ? (int)rows.begin()->size() : 0;
  ScalarMatrix M(F, a, b);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int64_t v : row) M.set(i, j++, F->from_int(v));
    ++i;
  }
  return M;
}

inline VecF mk_vec(const FieldPtr& F, std::initializer_list<int64_t> codes) {
  VecF v;
  for (int64_t c : codes) v.push_back(F->from_int(c));
  return v;
}

inline Point mk_point(const FieldPtr& F,
                      std::initializer_list<std::initializer_list<int64_t>> blocks) {
  Point p;
  for (const auto& b : blocks) p.push_back(mk_vec(F, b));
  return p;
}

}  // namespace mlrank::testing

#endif
