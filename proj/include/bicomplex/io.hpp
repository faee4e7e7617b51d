#pragma once

#include <string>

#include "bicomplex/complex.hpp"
#include "json.hpp"

namespace bcx {

using ojson = nlohmann::ordered_json;

ojson matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const ojson& j, int rows, int cols);
ojson vec_to_json(const Vec& v);

Bidegree parse_key(const std::string& key);

// {"n": int?, "dims": {"p,q": d}, "d1": {...}, "d2": {...}, "conj": {...}?}
ojson complex_to_json(const DoubleComplex& a);
DoubleComplex complex_from_json(const ojson& j);

std::string read_file(const std::string& path);

}  // namespace bcx
