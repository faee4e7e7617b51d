#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "bicomplex/spectral.hpp"

namespace bcx {

struct DeRhamData {
  int kmin = 0, kmax = -1;
  std::map<int, int> betti;
  std::map<Bidegree, int> hdr;            // classes with a pure-type representative
  std::map<int, bool> pure, full;         // sum of the hdr spaces is direct / fills H^k
  std::map<std::pair<int, int>, int> F;   // (p,k) -> dim F^p H^k, column filtration
  std::map<std::pair<int, int>, int> Fbar;  // (q,k) -> dim of the second filtration
  std::map<std::tuple<int, int, int>, int> m;  // (p,q,k) -> dim(F^p ∩ Fbar^q)
  bool conj_used = false;  // Fbar cross-checked against the conjugate of F
  int pmin = 0, pmax = -1, qmin = 0, qmax = -1;

  bool is_pure() const;
  // clamps p, q to the stored range
  int mult(int p, int q, int k) const;
};

DeRhamData de_rham(const DoubleComplex& a);

struct PureFullDuality {
  bool ok = true;
  std::vector<std::string> lines;
};
// pure in degree k <=> full in degree 2n-k; needs n and conj
PureFullDuality pure_full_duality_check(const DoubleComplex& a);

struct VarouchasDims {
  int a = 0, b = 0, c = 0, d = 0, e_tilde = 0, f = 0;
  int h_bc = 0, h_a = 0, e_col = 0, e_row = 0;
  bool exact1 = true, exact2 = true;  // both five-term sequences
  bool identity = true;               // h_bc + h_a = e_col + e_row + a + f
};

struct MapReport {
  Matrix m;
  bool injective = true, surjective = true;
  // the subspace conditions that are expected to match the two flags
  bool criterion_injective = true, criterion_surjective = true;
};

// Higher Bott-Chern / Aeppli groups and the maps between them and E_r.
class BcAeppli {
 public:
  explicit BcAeppli(const DoubleComplex& a, bool self_check = false);

  const DoubleComplex& complex() const { return a_; }
  SpectralSequence& col() { return *col_; }
  SpectralSequence& row() { return *row_; }

  Subspace ker_d(Bidegree b) const;         // ker d1 ∩ ker d2
  Subspace ker_ddbar(Bidegree b) const;     // ker d1 d2
  Subspace im_ddbar(Bidegree b) const;      // Im d1 d2
  Subspace im_sum(Bidegree b) const;        // Im d1 + Im d2
  Subspace closed(int r, Bidegree b) const;  // both towers run r-1 times
  Subspace exact(int r, Bidegree b) const;   // d1 zeta + d1 d2 xi + d2 eta with reaching potentials

  int h_bc(int r, Bidegree b) const;
  int h_a(int r, Bidegree b) const;

  // bases: lifts of ker d mod exact(r), of closed(r) mod im_sum
  Subspace bc_lifts(int r, Bidegree b) const;
  Subspace a_lifts(int r, Bidegree b) const;

  MapReport T(int r, Bidegree b);  // E_{r,BC} -> E_r (column)
  MapReport S(int r, Bidegree b);  // E_r -> E_{r,A}
  VarouchasDims varouchas(int r, Bidegree b);

 private:
  DoubleComplex a_;
  bool self_check_;
  std::unique_ptr<SpectralSequence> col_, row_;
};

struct VarouchasReport {
  int r = 1;
  std::map<Bidegree, VarouchasDims> dims;
  std::map<int, int> hsum, esum, betti2;  // per total degree: h_bc+h_a, e_col+e_row, 2 b_k
  bool exact = true, identity = true, inequality = true, equality = true;
};
VarouchasReport varouchas_report(BcAeppli& bc, int r);

struct SggReport {
  int b1 = 0, h01 = 0;
  bool numeric_sgg = false;  // b1 == 2 h^{0,1}
  std::map<int, bool> T_zero;  // r -> T_r = 0 on H_A^{n-1,n-1}
};
// needs n; r from 1 to r_last
SggReport sgg_numeric(BcAeppli& bc, int r_last);

}  // namespace bcx
