#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicomplex/io.hpp"
#include "bicomplex/models.hpp"
#include "bicomplex/spectral.hpp"

namespace bcx {

struct NotPositiveDefinite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotGauduchon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hermitian, with every leading principal minor > 0.
bool positive_definite(const Matrix& g);

// Per-bidegree Gram matrices; bidegrees without one use the identity.
class Metric {
 public:
  Metric() = default;
  void set_gram(Bidegree b, Matrix g);  // throws NotPositiveDefinite
  bool orthonormal() const { return gram_.empty(); }
  Matrix gram(Bidegree b, int dim) const;
  const std::map<Bidegree, Matrix>& grams() const { return gram_; }
  // x^H G y
  Scalar inner(Bidegree b, const Vec& x, const Vec& y) const;

 private:
  std::map<Bidegree, Matrix> gram_;
};

// {"orthonormal": true} or {"gram": {"p,q": [[...]]}}
Metric metric_from_json(const ojson& j, const DoubleComplex& a);
ojson metric_to_json(const Metric& g);

// adjoint of m : X -> Y for the Gram matrices of X and Y
Matrix adjoint_of(const Matrix& m, const Matrix& g_src, const Matrix& g_tgt);
// orthogonal projector onto s
Matrix projector(const Subspace& s, const Matrix& g);
// zero on the kernel, inverse on its orthogonal complement; h self-adjoint for g
Matrix pseudo_inverse(const Matrix& h, const Matrix& g);

// d1s[b] : A^b -> A^{b-(1,0)}, d2s[b] : A^b -> A^{b-(0,1)}
struct Adjoints {
  std::map<Bidegree, Matrix> d1s, d2s;
};
Adjoints adjoints(const DoubleComplex& a, const Metric& g);

// A'^{p,q} = A^{-p,-q} with d1' = d1*, d2' = d2*; its column towers are the
// starred ones.
DoubleComplex adjoint_complex(const DoubleComplex& a, const Metric& g);

struct LadderLevel {
  int r = 1;
  std::map<Bidegree, Subspace> H;
  std::map<Bidegree, Matrix> P;    // p_r
  std::map<Bidegree, Matrix> lap;  // the level-r Laplacian
  std::map<Bidegree, Matrix> D;    // D_{r-1} : b -> b + (r-1)(1,-1)
  std::map<Bidegree, Matrix> d;    // d_r^omega : b -> b + (r, 1-r)
};

// Harmonic spaces H_1 ⊇ H_2 ⊇ ... built from the pseudo-differential
// Laplacians of the d2-first (column) sequence.
class HarmonicLadder {
 public:
  HarmonicLadder(const DoubleComplex& a, const Metric& g, int r_max);

  int r_max() const { return static_cast<int>(levels_.size()); }
  const LadderLevel& level(int r) const { return levels_.at(r - 1); }
  const Subspace& H(int r, Bidegree b) const { return level(r).H.at(b); }
  const std::vector<Bidegree>& bidegrees() const { return grid_; }
  const DoubleComplex& complex() const { return a_; }
  const Metric& metric() const { return g_; }
  const Adjoints& adj() const { return adj_; }

 private:
  DoubleComplex a_;
  Metric g_;
  Adjoints adj_;
  std::vector<Bidegree> grid_;
  std::vector<LadderLevel> levels_;

  Matrix gram(Bidegree b) const { return g_.gram(b, a_.dim(b)); }
  LadderLevel first_level() const;
  LadderLevel next_level(const LadderLevel& prev) const;
  void finish_level(LadderLevel& lv) const;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
};

// dim H_r = e_r, H_r = Z_r ∩ C_r^perp, kernel of the Laplacian equals the
// common kernel of its pieces, and d_r^omega matches the engine's d_r
// through z -> [z].
CheckReport check_ladder(const HarmonicLadder& h, SpectralSequence& col);

// mutually orthogonal H_r, C_r, *C_r spanning A^{p,q}, with Z_r = H_r + C_r
// and *Z_r = H_r + *C_r, for r = 1..r_max
CheckReport three_space_check(const DoubleComplex& a, const Metric& g, int r_max);

// Lie models with the orthonormal monomial basis.
// star: A^{p,q} -> A^{n-q,n-p}, defined by alpha ∧ *conj(beta) = <alpha,beta> vol
// with vol = i^n phi_1 conj(phi_1) ... phi_n conj(phi_n).
std::map<Bidegree, Matrix> star(const LieModel& m);
// sigma(x) = S * conj_entries(x), A^{p,q} -> A^{n-p,n-q}
std::map<Bidegree, Matrix> sigma(const LieModel& m);
Scalar volume_coefficient(int n);
// coefficient of the top monomial in x ∧ y
Scalar top_coefficient(const LieModel& m, Bidegree bx, const Vec& x, Bidegree by, const Vec& y);
Matrix pairing_gram(const LieModel& m, Bidegree bx, const Subspace& x, Bidegree by, const Subspace& y);
Subspace sigma_image(const LieModel& m, Bidegree b, const Subspace& s);

// harmonic representatives for the E_r Bott-Chern and Aeppli spaces
Subspace bc_harmonic(const DoubleComplex& a, const Metric& g, int r, Bidegree b);
Subspace a_harmonic(const DoubleComplex& a, const Metric& g, int r, Bidegree b);

struct DualityReport {
  bool ok = true;
  std::vector<std::string> failures;
  int gram_checked = 0;  // number of nonsingular Gram matrices
};
// sigma(H_r) = H_r, sigma(Z_r) = *Z_r, nonsingular E_r and BC x A pairings,
// sigma(BC harmonic) = A harmonic, for r = 1..r_max
DualityReport dualities(const LieModel& m, int r_max);

// i * sum phi_j ∧ conj(phi_j)
Form canonical_omega(const LieModel& m);
// checks del dbar omega^{n-1} = 0 (else NotGauduchon), then whether
// del omega^{n-1} lies in C_r^{n,n-1}
bool er_sg_test(const LieModel& m, const Form& omega, int r);

}  // namespace bcx
