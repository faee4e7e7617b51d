#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicomplex/hodge.hpp"
#include "bicomplex/models.hpp"

namespace bcx {

struct NotParallelisable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Obstructed : std::runtime_error {
  int nu;
  explicit Obstructed(int order)
      : std::runtime_error("order " + std::to_string(order) + " right-hand side is not del-dbar-exact"), nu(order) {}
};

// sum_i theta_i ⊗ comp[i], each comp[i] a (0,q)-form
struct VectorForm {
  std::vector<Form> comp;

  VectorForm() = default;
  explicit VectorForm(int n) : comp(n) {}
  static VectorForm term(int n, int i, const Form& f);

  bool is_zero() const;
  friend VectorForm operator+(const VectorForm& a, const VectorForm& b);
  friend VectorForm operator-(const VectorForm& a, const VectorForm& b);
  friend VectorForm operator*(const Scalar& s, const VectorForm& a);
  friend bool operator==(const VectorForm& a, const VectorForm& b) { return (a - b).is_zero(); }
};

std::string vector_form_str(const LieModel& m, const VectorForm& v);

// interior product theta_i ⌟ alpha (a derivation of degree -1)
Form interior(const LieModel& m, int i, const Form& alpha);
// (theta_i ⊗ b) ⌟ alpha = b ∧ (theta_i ⌟ alpha)
Form contract(const LieModel& m, const VectorForm& psi, const Form& alpha);
// [theta_i ⊗ b, theta_j ⊗ c] = [theta_i, theta_j] ⊗ b ∧ c; complex-parallelisable models
VectorForm bracket(const LieModel& m, const VectorForm& psi, const VectorForm& rho);
VectorForm dbar(const LieModel& m, const VectorForm& psi);

// u = phi_1 ∧ ... ∧ phi_n with coefficient 1
Form holomorphic_volume(const LieModel& m);
// inverse of psi -> psi ⌟ u on (0,q)-valued forms; eta of bidegree (n-1,q)
VectorForm calabi_yau_inverse(const LieModel& m, const Form& eta, int q);

struct TangentCohomology {
  Subspace h01;                    // ker dbar in A^{0,1}
  std::vector<VectorForm> basis;   // theta_i ⊗ (basis of h01), i outer
  std::vector<std::string> labels;  // "theta_i*conj(phi_l)"
  std::vector<VectorForm> parallel;  // theta-part in the centre Z(g)
  int dim() const { return static_cast<int>(basis.size()); }
};
TangentCohomology tangent_cohomology(const LieModel& m);

// least-norm d-closed (n-1,1) form in the Dolbeault class of psi ⌟ u,
// returned as the vector form it comes from
VectorForm d_closed_representative(const LieModel& m, const VectorForm& psi, const Metric& g = Metric());

struct MembershipCase {
  std::string name;  // "closed x closed", "closed x exact", "exact x closed", "exact x exact"
  int pairs = 0;
  int members = 0;         // contraction in Z_2^{n-2,2}
  int zero = 0;            // contraction vanishes
  int del_in_im_ddbar = 0;  // del of the contraction is del-dbar exact
  int del_in_im_dbar = 0;
};
struct MembershipReport {
  int closed_dim = 0, exact_dim = 0;  // directions with psi ⌟ u in ker d, resp. Im del ∩ ker dbar
  std::vector<MembershipCase> cases;
  // same cases with the exact directions taken in all of Im del; not part of ok()
  int full_exact_dim = 0;
  std::vector<MembershipCase> full_cases;
  bool ok() const;
};
// psi ⌟ (rho ⌟ u) ∈ Z_2^{n-2,2} for basis pairs of the closed and exact directions
MembershipReport appendix2_membership(const LieModel& m);

struct EssentialReport {
  int e1 = 0, e1_zero = 0, e2 = 0;
  bool z_equality = false;  // Z_1^{n-1,1} = Z_2^{n-1,1}
  Matrix P;                 // E_1^{n-1,1}_0 -> E_2^{n-1,1} in lift coordinates
  Matrix J;                 // E_2 -> E_1_0
  bool PJ_identity = false;
  std::vector<Vec> essential;  // harmonic representatives spanning the image of J
  Subspace essential_e1;       // image of J inside E_1^{n-1,1} (class coordinates)
  Subspace parallel_e1;        // classes of (H^{0,1} ⊗ Z(g)) ⌟ u inside E_1^{n-1,1}
};
EssentialReport essential_spaces(const LieModel& m, const Metric& g = Metric());
// span of the classes of the given (n-1,1) forms in E_1^{n-1,1}
Subspace e1_classes(const LieModel& m, const std::vector<Form>& forms);

struct DeformationSeries {
  Vec t;
  std::vector<VectorForm> psi;  // psi[0] = psi_1
  std::vector<bool> residual_zero;  // per order nu = 2..N
  std::vector<bool> im_del;         // psi_nu ⌟ u ∈ Im del, nu = 2..N
};
DeformationSeries run_kuranishi(const LieModel& m, const Vec& t, int N, const Metric& g = Metric());

}  // namespace bcx
