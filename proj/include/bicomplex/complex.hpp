#pragma once

#include <compare>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bicomplex/linalg.hpp"

namespace bcx {

struct Bidegree {
  int p = 0, q = 0;
  auto operator<=>(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {p + o.p, q + o.q}; }
  Bidegree swapped() const { return {q, p}; }
  int total() const { return p + q; }
  std::string key() const { return std::to_string(p) + "," + std::to_string(q); }
};

struct Box {
  int pmin = 0, pmax = -1, qmin = 0, qmax = -1;
  bool empty() const { return pmax < pmin; }
  int width() const { return empty() ? 0 : pmax - pmin + 1; }
  int height() const { return empty() ? 0 : qmax - qmin + 1; }
};

struct InvalidComplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bigraded space with d1 of bidegree (1,0) and d2 of bidegree (0,1).
// Missing matrices are zero maps. conj(p,q) is the matrix C with
// x -> C * conj_entries(x) mapping A^{p,q} to A^{q,p}.
class DoubleComplex {
 public:
  std::optional<int> n;

  int dim(Bidegree b) const;
  void set_dim(Bidegree b, int d);
  Matrix d1(Bidegree b) const;
  Matrix d2(Bidegree b) const;
  void set_d1(Bidegree b, Matrix m);
  void set_d2(Bidegree b, Matrix m);

  bool has_conj() const { return conj_.has_value(); }
  Matrix conj(Bidegree b) const;
  void set_conj(Bidegree b, Matrix m);
  void clear_conj() { conj_.reset(); }
  void enable_conj() {
    if (!conj_) conj_.emplace();
  }

  // bidegrees with positive dimension, ascending
  std::vector<Bidegree> support() const;
  Box box() const;
  int total_dim() const;
  int max_total_degree() const;
  int min_total_degree() const;

  const std::map<Bidegree, int>& dims() const { return dims_; }
  const std::map<Bidegree, Matrix>& d1_map() const { return d1_; }
  const std::map<Bidegree, Matrix>& d2_map() const { return d2_; }
  const std::map<Bidegree, Matrix>& conj_map() const;

 private:
  std::map<Bidegree, int> dims_;
  std::map<Bidegree, Matrix> d1_, d2_;
  std::optional<std::map<Bidegree, Matrix>> conj_;
};

// Violated identities, empty when valid.
std::vector<std::string> validate(const DoubleComplex& a);
void require_valid(const DoubleComplex& a);

enum class ShapeKind { square, dot, even_type1, even_type2, odd_M, odd_L };

struct ElementaryShape {
  ShapeKind kind = ShapeKind::dot;
  Bidegree anchor;
  int length = 1;
  auto operator<=>(const ElementaryShape&) const = default;
};

std::string kind_name(ShapeKind k);
ShapeKind parse_kind(const std::string& s);
std::string shape_name(const ElementaryShape& s);
ElementaryShape parse_shape(const std::string& s);

DoubleComplex elementary(const ElementaryShape& s);
DoubleComplex direct_sum(const DoubleComplex& a, const DoubleComplex& b);
DoubleComplex tensor(const DoubleComplex& a, const DoubleComplex& b);
DoubleComplex shift(const DoubleComplex& a, int i);
DoubleComplex dual(const DoubleComplex& a);
// dual about (m,m) without requiring n
DoubleComplex dual_about(const DoubleComplex& a, int m);
DoubleComplex conjugate(const DoubleComplex& a);
// Exchanges p and q and the two differentials.
DoubleComplex transpose(const DoubleComplex& a);
DoubleComplex blowup_model(const DoubleComplex& x, const DoubleComplex& z, int codim);
// New coordinates x = P x' at every bidegree in the map.
DoubleComplex change_basis(const DoubleComplex& a, const std::map<Bidegree, Matrix>& p);
DoubleComplex scramble(const DoubleComplex& a, std::mt19937& rng);

// Total complex: degree-k space is the direct sum of A^{p,k-p} in
// ascending p order.
struct TotalDegree {
  int k = 0;
  std::vector<Bidegree> parts;
  std::vector<int> offsets;
  int dim = 0;
  int offset_of(Bidegree b) const;
};

TotalDegree total_degree(const DoubleComplex& a, int k);
Matrix total_differential(const DoubleComplex& a, int k);  // degree k -> k+1

}  // namespace bcx
