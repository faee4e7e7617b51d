#include "bicomplex/io.hpp"

#include <fstream>
#include <sstream>

namespace bcx {

ojson matrix_to_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(std::move(r));
  }
  return rows;
}

ojson vec_to_json(const Vec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Matrix matrix_from_json(const ojson& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& r = j[i];
    if (!r.is_array() || static_cast<int>(r.size()) != cols)
      throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      if (r[c].is_number_integer())
        m(i, c) = Scalar(r[c].get<long>());
      else if (r[c].is_string())
        m(i, c) = Scalar::parse(r[c].get<std::string>());
      else
        throw ParseError("matrix entries must be scalar strings");
    }
  }
  return m;
}

Bidegree parse_key(const std::string& key) {
  auto c = key.find(',');
  if (c == std::string::npos) throw ParseError("bidegree key '" + key + "' must be \"p,q\"");
  try {
    size_t used = 0;
    int p = std::stoi(key.substr(0, c), &used);
    if (used != c) throw ParseError("bad bidegree key '" + key + "'");
    std::string rest = key.substr(c + 1);
    int q = std::stoi(rest, &used);
    if (used != rest.size()) throw ParseError("bad bidegree key '" + key + "'");
    return {p, q};
  } catch (const std::logic_error&) {
    throw ParseError("bad bidegree key '" + key + "'");
  }
}

ojson complex_to_json(const DoubleComplex& a) {
  ojson j;
  if (a.n) j["n"] = *a.n;
  ojson dims = ojson::object();
  for (auto b : a.support()) dims[b.key()] = a.dim(b);
  j["dims"] = dims;
  ojson d1 = ojson::object(), d2 = ojson::object();
  for (const auto& [b, m] : a.d1_map()) d1[b.key()] = matrix_to_json(m);
  for (const auto& [b, m] : a.d2_map()) d2[b.key()] = matrix_to_json(m);
  j["d1"] = d1;
  j["d2"] = d2;
  if (a.has_conj()) {
    ojson c = ojson::object();
    for (auto b : a.support()) c[b.key()] = matrix_to_json(a.conj(b));
    j["conj"] = c;
  }
  return j;
}

DoubleComplex complex_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("dims")) throw ParseError("complex JSON needs a \"dims\" object");
  DoubleComplex a;
  if (j.contains("n")) a.n = j["n"].get<int>();
  for (const auto& [k, v] : j["dims"].items()) {
    if (!v.is_number_integer() || v.get<int>() < 0) throw ParseError("dims entries must be non-negative integers");
    a.set_dim(parse_key(k), v.get<int>());
  }
  auto load = [&](const char* name, Bidegree step, bool first) {
    if (!j.contains(name)) return;
    for (const auto& [k, v] : j[name].items()) {
      Bidegree b = parse_key(k);
      Matrix m = matrix_from_json(v, a.dim(b + step), a.dim(b));
      if (first)
        a.set_d1(b, m);
      else
        a.set_d2(b, m);
    }
  };
  load("d1", {1, 0}, true);
  load("d2", {0, 1}, false);
  if (j.contains("conj")) {
    a.enable_conj();
    for (const auto& [k, v] : j["conj"].items()) {
      Bidegree b = parse_key(k);
      a.set_conj(b, matrix_from_json(v, a.dim(b.swapped()), a.dim(b)));
    }
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bcx
