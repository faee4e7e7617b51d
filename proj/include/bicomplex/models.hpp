#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicomplex/complex.hpp"

namespace bcx {

struct IntegrabilityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct JacobiViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownModel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Mask = std::uint32_t;
// sparse form: monomial mask -> coefficient
using Form = std::map<Mask, Scalar>;

// Monomials over phi_1..phi_n (bits 0..n-1) and conj phi_1..conj phi_n
// (bits n..2n-1); a mask denotes the wedge in ascending bit order.
int wedge_sign(Mask a, Mask b);  // 0 if they overlap
Form wedge(const Form& a, const Form& b);
void add_to(Form& f, Mask m, const Scalar& c);

class LieModel {
 public:
  LieModel() = default;
  LieModel(int n, std::string gen_name, std::vector<Form> dphi);

  int n() const { return n_; }
  const std::string& gen_name() const { return name_; }
  const std::vector<Form>& structure() const { return dphi_; }

  Bidegree bidegree(Mask m) const;
  Mask conj_mask(Mask m, int* sign) const;
  Form conj(const Form& f) const;
  Form d_generator(int bit) const;
  Form d(Mask m) const;
  Form d(const Form& f) const;
  Form del(const Form& f) const;   // (1,0) part of d
  Form dbar(const Form& f) const;  // (0,1) part of d

  const std::vector<Mask>& basis(Bidegree b) const;
  int index(Mask m) const;
  Vec to_vec(const Form& f, Bidegree b) const;
  Form from_vec(const Vec& v, Bidegree b) const;
  Mask top() const { return (Mask(1) << (2 * n_)) - 1; }
  Mask phi_top() const { return (Mask(1) << n_) - 1; }

  bool parallelisable() const;
  // c^k_{ij} with [theta_i, theta_j] = sum_k c^k_{ij} theta_k (0-based)
  Scalar bracket_constant(int i, int j, int k) const;
  // basis of the centre of g^{1,0}, as coefficient vectors over theta_1..theta_n
  std::vector<Vec> centre() const;

  std::string mono_name(Mask m) const;
  std::string form_str(const Form& f) const;

  DoubleComplex complex() const;

 private:
  int n_ = 0;
  std::string name_ = "phi";
  std::vector<Form> dphi_;
  std::map<Bidegree, std::vector<Mask>> basis_;
  std::vector<int> index_;
  void build_basis();
};

LieModel parse_structure_equations(const std::string& text);
DoubleComplex exterior_bicomplex(const LieModel& m);

// Commutative bigraded algebra with Leibniz differentials, truncated to a
// window and divided by a differential ideal.
struct CdgaGenerator {
  std::string name;
  Bidegree deg;
  bool odd = false;
};

using Exponents = std::vector<int>;
using Poly = std::map<Exponents, Scalar>;

struct CdgaModel {
  int n = 0;  // window 0 <= p,q <= n
  std::vector<CdgaGenerator> gens;
  std::map<int, Poly> del, dbar;  // by generator index; absent = 0
  std::vector<Poly> relations;
};

CdgaModel parse_cdga(const std::string& text);
DoubleComplex cdga_complex(const CdgaModel& m);
CdgaModel calabi_eckmann_cdga(int u, int v);
DoubleComplex calabi_eckmann_model(int u, int v);

std::vector<std::string> corpus_names();
DoubleComplex corpus(const std::string& name);
std::optional<LieModel> corpus_lie(const std::string& name);
std::string corpus_lie_text(const std::string& name);

}  // namespace bcx
