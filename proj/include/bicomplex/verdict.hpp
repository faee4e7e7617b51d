#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicomplex/cohomology.hpp"
#include "bicomplex/hodge.hpp"
#include "bicomplex/io.hpp"
#include "bicomplex/models.hpp"

namespace bcx {

struct Disagreement : std::logic_error {
  using std::logic_error::logic_error;
};

// page-r-ddbar decision; the characterizations work on page R = r + 1
struct Verdict {
  int r = 0;
  bool char1 = false;  // identity induces E_R ≅ H^k on both sides
  bool char2 = false;  // degeneration at E_R on both sides, De Rham pure
  bool char3 = false;  // exactness equivalences on d-closed pure forms, for A and its dual
  bool char4 = false;  // T_R and S_R bijective
  bool char5 = false;  // S_R T_R injective
  bool zz = false;     // squares, dots and evens of length <= 2r
  bool unanimous = false;
  std::vector<std::string> reasons;  // first failure of each negative sub-verdict

  bool value() const { return zz; }
};

// Throws Disagreement when strict and the sub-verdicts differ.
Verdict characterize(const DoubleComplex& a, int r, bool strict = true);

struct VerdictSeries {
  std::vector<Verdict> verdicts;  // r = 0..r_max
  int minimal_r = -1;             // -1: none up to r_max
  bool monotone = true;
};
VerdictSeries verdict_series(const DoubleComplex& a, int r_max, bool strict = true);
// at least 3 and at least the degeneration page of both sequences; past it the
// verdict no longer changes
int default_r_max(const DoubleComplex& a);
int minimal_r(const DoubleComplex& a, int r_max);

struct Page0Report {
  bool page0 = false;
  bool ddbar_lemma = false;  // d-closed and (del-, dbar- or d-exact) implies ddbar-exact
  bool agree() const { return page0 == ddbar_lemma; }
};
// throws Disagreement when the two differ
Page0Report page0_equals_ddbar(const DoubleComplex& a);

// pure-type d-exact forms of bidegree b
Subspace pure_d_exact(const DoubleComplex& a, Bidegree b);

struct ReportOptions {
  std::string name;
  int r_max = -1;  // -1: default_r_max
  std::optional<Metric> metric;
  std::optional<LieModel> lie;
  int kuranishi_order = 3;
};

// Deterministic key order. An invalid complex yields {"valid": false, "errors": [...]} only.
ojson full_report(const DoubleComplex& a, const ReportOptions& opt = {});

// smaller pieces, shared with the command line tool
ojson pages_json(SpectralSequence& s);
ojson de_rham_json(const DeRhamData& d);
ojson bc_a_json(BcAeppli& bc, int r_last);
ojson varouchas_json(BcAeppli& bc, int r);
ojson verdict_json(const Verdict& v);
ojson series_json(const VerdictSeries& s);

}  // namespace bcx
