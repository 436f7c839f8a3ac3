#include "mlrank/json_io.hpp"

#include <fstream>

#include "mlrank/errors.hpp"

namespace mlrank {

namespace {

int64_t get_int(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_number_integer(),
          std::string("expected integer field '") + key + "'");
  return j[key].get<int64_t>();
}

const json& get_array(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_array(),
          std::string("expected array field '") + key + "'");
  return j[key];
}

}  // namespace

json field_to_json(const FieldPtr& F) {
  json j;
  j["p"] = F->p();
  j["k"] = F->k();
  if (F->k() > 1) j["modulus"] = F->modulus();
  return j;
}

FieldPtr field_from_json(const json& j) {
  require(j.is_object(), "field description must be an object");
  int64_t p = get_int(j, "p");
  int k = (int)(j.contains("k") ? get_int(j, "k") : 1);
  if (k == 1) {
    require(!j.contains("modulus") || j["modulus"].is_null(),
            "prime field carries no modulus");
    return FieldCtx::make(p, 1);
  }
  if (!j.contains("modulus")) return FieldCtx::make(p, k);
  std::vector<int64_t> modulus;
  for (const auto& c : get_array(j, "modulus")) {
    require(c.is_number_integer(), "modulus coefficients must be integers");
    modulus.push_back(c.get<int64_t>());
  }
  return FieldCtx::make_with_modulus(p, k, std::move(modulus));
}

json elem_to_json(const FieldElem& v) { return json(v.coords()); }

FieldElem elem_from_json(const json& j, const FieldPtr& F) {
  require(j.is_array(), "element must be an integer array");
  std::vector<int64_t> coords;
  for (const auto& c : j) {
    require(c.is_number_integer(), "element coordinates must be integers");
    coords.push_back(c.get<int64_t>());
  }
  require((int)coords.size() == F->k(), "element has wrong coordinate count");
  return FieldElem(F, std::move(coords));
}

json form_to_json(const MultilinearForm& f) {
  json j;
  j["blocks"] = f.blocks();
  j["n"] = f.n();
  json terms = json::array();
  for (const auto& [idx, c] : f.terms()) {
    json t;
    t["idx"] = idx;
    t["coef"] = elem_to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

MultilinearForm form_from_json(const json& j, const FieldPtr& F) {
  require(j.is_object(), "form must be an object");
  std::vector<int> blocks;
  for (const auto& b : get_array(j, "blocks")) {
    require(b.is_number_integer(), "block labels must be integers");
    blocks.push_back(b.get<int>());
  }
  int n = (int)get_int(j, "n");
  MultilinearForm f(F, blocks, n);
  for (const auto& t : get_array(j, "terms")) {
    Index idx;
    for (const auto& i : get_array(t, "idx")) idx.push_back(i.get<int32_t>());
    f.add_term(idx, elem_from_json(t["coef"], F));
  }
  return f;
}

json matrix_to_json(const FormMatrix& M) {
  json j;
  j["field"] = field_to_json(M.field());
  j["d"] = M.d();
  j["n"] = M.n();
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  json entries = json::array();
  for (int i = 0; i < M.rows(); ++i)
    for (int jj = 0; jj < M.cols(); ++jj) {
      if (M.at(i, jj).is_zero()) continue;
      json e;
      e["row"] = i;
      e["col"] = jj;
      e["terms"] = form_to_json(M.at(i, jj))["terms"];
      entries.push_back(std::move(e));
    }
  j["entries"] = std::move(entries);
  return j;
}

FormMatrix matrix_from_json(const json& j) {
  require(j.is_object(), "matrix must be an object");
  require(j.contains("field"), "matrix is missing its field");
  FieldPtr F = field_from_json(j["field"]);
  int d = (int)get_int(j, "d");
  int n = (int)get_int(j, "n");
  int rows = (int)get_int(j, "rows");
  int cols = (int)get_int(j, "cols");
  FormMatrix M(F, d, n, rows, cols);
  std::vector<int> blocks(d);
  for (int b = 0; b < d; ++b) blocks[b] = b + 1;
  for (const auto& e : get_array(j, "entries")) {
    int i = (int)get_int(e, "row");
    int c = (int)get_int(e, "col");
    MultilinearForm f(F, blocks, n);
    for (const auto& t : get_array(e, "terms")) {
      Index idx;
      for (const auto& x : get_array(t, "idx")) idx.push_back(x.get<int32_t>());
      f.add_term(idx, elem_from_json(t["coef"], F));
    }
    M.set(i, c, std::move(f));
  }
  return M;
}

json scalar_matrix_to_json(const ScalarMatrix& M) {
  json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  json data = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < M.cols(); ++c) row.push_back(elem_to_json(M.at(i, c)));
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  return j;
}

ScalarMatrix scalar_matrix_from_json(const json& j, const FieldPtr& F) {
  int rows = (int)get_int(j, "rows");
  int cols = (int)get_int(j, "cols");
  ScalarMatrix M(F, rows, cols);
  const json& data = get_array(j, "data");
  require((int)data.size() == rows, "scalar matrix row count mismatch");
  for (int i = 0; i < rows; ++i) {
    require((int)data[i].size() == cols, "scalar matrix column count mismatch");
    for (int c = 0; c < cols; ++c) M.set(i, c, elem_from_json(data[i][c], F));
  }
  return M;
}

json point_to_json(const Point& p) {
  json j = json::array();
  for (const auto& vec : p) {
    json row = json::array();
    for (const auto& v : vec) row.push_back(elem_to_json(v));
    j.push_back(std::move(row));
  }
  return j;
}

Point point_from_json(const json& j, const FieldPtr& F, int d, int n) {
  require(j.is_array() && (int)j.size() == d, "point must list one vector per block");
  Point p;
  for (const auto& row : j) {
    require(row.is_array() && (int)row.size() == n, "point vector has wrong length");
    VecF vec;
    for (const auto& v : row) vec.push_back(elem_from_json(v, F));
    p.push_back(std::move(vec));
  }
  return p;
}

json poly_to_json(const Poly& f) {
  json j;
  j["field"] = field_to_json(f.field());
  j["nvars"] = f.nvars();
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) {
    json t;
    t["exp"] = e;
    t["coef"] = elem_to_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_json(const json& j) {
  require(j.is_object() && j.contains("field"), "polynomial is missing its field");
  FieldPtr F = field_from_json(j["field"]);
  int nvars = (int)get_int(j, "nvars");
  Poly f(F, nvars);
  for (const auto& t : get_array(j, "terms")) {
    std::vector<int32_t> e;
    for (const auto& x : get_array(t, "exp")) e.push_back(x.get<int32_t>());
    f.add_term(e, elem_from_json(t["coef"], F));
  }
  return f;
}

namespace {

std::vector<int> mask_to_blocks(uint32_t mask) {
  std::vector<int> blocks;
  for (int b = 1; mask; ++b, mask >>= 1)
    if (mask & 1) blocks.push_back(b);
  return blocks;
}

uint32_t blocks_to_mask(const std::vector<int>& blocks, int d) {
  uint32_t mask = 0;
  for (int b : blocks) {
    require(b >= 1 && b <= d, "subset block label out of range");
    mask |= 1u << (b - 1);
  }
  return mask;
}

}  // namespace

json term_to_json(const RankOneTerm& t, int) {
  json j;
  j["S"] = mask_to_blocks(t.subset_mask);
  json u = json::array(), v = json::array();
  for (const auto& f : t.u) u.push_back(form_to_json(f));
  for (const auto& f : t.v) v.push_back(form_to_json(f));
  j["u"] = std::move(u);
  j["v"] = std::move(v);
  return j;
}

RankOneTerm term_from_json(const json& j, const FieldPtr& F, int d) {
  RankOneTerm t;
  std::vector<int> blocks;
  for (const auto& b : get_array(j, "S")) blocks.push_back(b.get<int>());
  t.subset_mask = blocks_to_mask(blocks, d == 0 ? 1 : d);
  for (const auto& f : get_array(j, "u")) t.u.push_back(form_from_json(f, F));
  for (const auto& f : get_array(j, "v")) t.v.push_back(form_from_json(f, F));
  return t;
}

json decomposition_to_json(const PartitionDecomposition& D) {
  json j;
  j["field"] = field_to_json(D.F);
  j["a"] = D.a;
  j["b"] = D.b;
  j["d"] = D.d;
  j["n"] = D.n;
  json terms = json::array();
  for (const auto& t : D.terms) terms.push_back(term_to_json(t, D.d));
  j["terms"] = std::move(terms);
  json log = json::array();
  for (const auto& r : D.log) {
    json rec;
    rec["point"] = r.point_code;
    rec["rows"] = r.rows;
    rec["cols"] = r.cols;
    rec["r"] = r.r;
    rec["cr_before"] = r.cr_before;
    rec["cr_after"] = r.cr_after;
    rec["exhaustive"] = r.exhaustive_search;
    rec["extension"] = r.extension_degree;
    log.push_back(std::move(rec));
  }
  j["log"] = std::move(log);
  return j;
}

PartitionDecomposition decomposition_from_json(const json& j) {
  require(j.is_object() && j.contains("field"), "decomposition is missing its field");
  PartitionDecomposition D;
  D.F = field_from_json(j["field"]);
  D.a = (int)get_int(j, "a");
  D.b = (int)get_int(j, "b");
  D.d = (int)get_int(j, "d");
  D.n = (int)get_int(j, "n");
  for (const auto& t : get_array(j, "terms"))
    D.terms.push_back(term_from_json(t, D.F, D.d));
  if (j.contains("log")) {
    for (const auto& rec : get_array(j, "log")) {
      IterationRecord r;
      r.point_code = rec.value("point", (uint64_t)0);
      if (rec.contains("rows"))
        for (const auto& x : rec["rows"]) r.rows.push_back(x.get<int>());
      if (rec.contains("cols"))
        for (const auto& x : rec["cols"]) r.cols.push_back(x.get<int>());
      r.r = rec.value("r", 0);
      r.cr_before = rec.value("cr_before", -1);
      r.cr_after = rec.value("cr_after", -1);
      r.exhaustive_search = rec.value("exhaustive", true);
      r.extension_degree = rec.value("extension", 1);
      D.log.push_back(std::move(r));
    }
  }
  return D;
}

json tensor_to_json(const Tensor3& T) {
  json j = form_to_json(T.f);
  j["field"] = field_to_json(T.field());
  return j;
}

Tensor3 tensor_from_json(const json& j) {
  require(j.is_object() && j.contains("field"), "tensor is missing its field");
  FieldPtr F = field_from_json(j["field"]);
  MultilinearForm f = form_from_json(j, F);
  return make_tensor(std::move(f));
}

json local_elem_to_json(const LocalElem& e) {
  json j = json::array();
  for (const auto& [mask, f] : e.components()) {
    json c;
    c["S"] = mask_to_blocks(mask);
    c["form"] = form_to_json(f);
    j.push_back(std::move(c));
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), "cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

}  // namespace mlrank
