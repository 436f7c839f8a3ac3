#ifndef MLRANK_JSON_IO_HPP
#define MLRANK_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "mlrank/decomp.hpp"
#include "mlrank/localring.hpp"
#include "mlrank/mlmatrix.hpp"
#include "mlrank/schur.hpp"
#include "mlrank/tensor3.hpp"

namespace mlrank {

using json = nlohmann::json;

// field: {"p": int, "k": int, "modulus": [c0..ck]}; modulus omitted for k = 1
json field_to_json(const FieldPtr& F);
FieldPtr field_from_json(const json& j);

// elements are length-k integer arrays, constant coordinate first
json elem_to_json(const FieldElem& v);
FieldElem elem_from_json(const json& j, const FieldPtr& F);

// form: {"blocks":[...], "n":..., "terms":[{"idx":[...], "coef":[...]}]}
json form_to_json(const MultilinearForm& f);
MultilinearForm form_from_json(const json& j, const FieldPtr& F);

// matrix: {"field":..., "d":..., "n":..., "rows":..., "cols":...,
//          "entries":[{"row":i, "col":j, "terms":[...]}]}
// absent entries are zero; rows/cols 0-based, variable indices 1-based
json matrix_to_json(const FormMatrix& M);
FormMatrix matrix_from_json(const json& j);

json scalar_matrix_to_json(const ScalarMatrix& M);
ScalarMatrix scalar_matrix_from_json(const json& j, const FieldPtr& F);

// point: d arrays of n element arrays
json point_to_json(const Point& p);
Point point_from_json(const json& j, const FieldPtr& F, int d, int n);

// polynomial: {"field":..., "nvars":..., "terms":[{"exp":[...], "coef":[...]}]}
json poly_to_json(const Poly& f);
Poly poly_from_json(const json& j);

// rank-one term: {"S":[block labels], "u":[form...], "v":[form...]}
json term_to_json(const RankOneTerm& t, int d);
RankOneTerm term_from_json(const json& j, const FieldPtr& F, int d);

// decomposition: {"field":..., "a":..., "b":..., "d":..., "n":...,
//                 "terms":[...], "log":[...]}
json decomposition_to_json(const PartitionDecomposition& D);
PartitionDecomposition decomposition_from_json(const json& j);

// tensor file: a form on blocks [1,2,3] with its field attached
json tensor_to_json(const Tensor3& T);
Tensor3 tensor_from_json(const json& j);

// debug dump of a truncated local element: one {"S":[...], "form":...} per
// stored component
json local_elem_to_json(const LocalElem& e);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace mlrank

#endif
