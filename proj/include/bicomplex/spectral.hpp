#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicomplex/complex.hpp"

namespace bcx {

// An internal consistency check failed; never expected on valid input.
struct SelfCheckFailed : std::logic_error {
  using std::logic_error::logic_error;
};

// column: the d2-first sequence starting at H(d2); row: the d1-first one.
enum class Side { column, row };
std::string side_name(Side s);
Side parse_side(const std::string& s);

struct TowerSpec {
  enum Kind { Zr, Cr };
  Side side = Side::column;
  Kind kind = Zr;
  int r = 1;
  Bidegree at;
};

// E_r^b = Z_r^b / C_r^b with lifts spanning a complement of C_r in Z_r.
struct PageEntry {
  Subspace Z, C;
  Subspace lifts;  // rows are the chosen representatives
  int dim() const { return lifts.dim(); }
};

struct Page {
  int r = 1;
  std::map<Bidegree, PageEntry> entries;
  std::map<Bidegree, Matrix> d;  // E_r^b -> E_r^{target}; absent if either side is 0
};

class SpectralSequence {
 public:
  SpectralSequence(const DoubleComplex& a, Side side, bool self_check = false);

  Side side() const { return side_; }
  const DoubleComplex& complex() const { return a_; }
  int r_max() const { return r_max_; }
  // bidegrees of the bounding box, ascending
  const std::vector<Bidegree>& bidegrees() const { return grid_; }

  // first differential (d2 on the column side) and the other one
  Matrix first(Bidegree b) const;
  Matrix second(Bidegree b) const;
  Bidegree first_step() const;
  Bidegree second_step() const;
  Bidegree chain_step() const { return second_step() + Bidegree{-first_step().p, -first_step().q}; }
  Bidegree target(int r, Bidegree b) const;

  // alpha whose second differential runs at least j times
  const Subspace& runs(int j, Bidegree b) const;
  // zeta whose first differential reaches 0 in at most j steps
  const Subspace& reach(int j, Bidegree b) const;

  Subspace Z(int r, Bidegree b) const;
  Subspace C(int r, Bidegree b) const;

  const Page& page(int r);
  int e(int r, Bidegree b) { return entry(r, b).dim(); }
  const PageEntry& entry(int r, Bidegree b);

  // u_1..u_{r-1} for alpha in Z_r (least-norm at each step, or a particular
  // solution when least_norm is false). Throws Unsolvable outside Z_r.
  std::vector<Vec> witness(int r, Bidegree b, const Vec& alpha, bool least_norm = true) const;
  // representative of d_r of the class of alpha
  Vec d_raw(int r, Bidegree b, const Vec& alpha, bool least_norm = true) const;
  // coordinates of z in Z_r^b modulo C_r^b, in the lift basis
  Vec class_of(int r, Bidegree b, const Vec& z);

  bool d_zero(int r);
  std::vector<std::pair<Bidegree, Bidegree>> d_nonzero(int r);
  // least r with d_rho = 0 for all rho >= r
  int degeneration();

 private:
  DoubleComplex a_;
  Side side_;
  bool self_check_;
  int r_max_ = 1;
  int stable_ = 1 << 20;  // first j with runs_j = runs_{j-1} and reach_j = reach_{j-1}
  std::vector<Bidegree> grid_;
  std::vector<std::map<Bidegree, Subspace>> runs_, reach_;
  std::map<int, std::unique_ptr<Page>> pages_;

  Subspace zero_at(Bidegree b) const { return Subspace(a_.dim(b)); }
  void build_towers();
  void check_page(const Page& pg);
};

// Block-system form of the towers, used as an independent check.
Subspace tower_subspace(const DoubleComplex& a, const TowerSpec& spec);

// Filtration by the first index (column) or second index (row) of H^k:
// classes representable in the span of A^{i,k-i} with i >= p (column) or
// k-i >= p (row).
Subspace cocycles(const DoubleComplex& a, int k);
Subspace coboundaries(const DoubleComplex& a, int k);
// cocycles supported in the given filtration level, as a subspace of
// total degree k
Subspace filtered_cocycles(const DoubleComplex& a, Side side, int p, int k);
int filtration_dim(const DoubleComplex& a, Side side, int p, int k);

struct FiltrationCheck {
  bool ok = true;
  std::vector<std::string> mismatches;
};
// dim E_inf^{p,q} = dim F^p H^{p+q} - dim F^{p+1} H^{p+q} on both sides
FiltrationCheck infinity_vs_filtration(const DoubleComplex& a);

}  // namespace bcx
