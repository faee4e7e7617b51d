#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicomplex/cohomology.hpp"
#include "bicomplex/io.hpp"
#include "bicomplex/spectral.hpp"

namespace bcx {

struct NegativeMultiplicity : std::logic_error {
  using std::logic_error::logic_error;
};

// Multiplicities of the indecomposable shapes. Evens are keyed by the
// source of the page-l differential they carry, odds by (k, p, q) where
// the class lies in F^p ∩ Fbar^q of H^k but in no smaller piece.
struct MultiplicityTable {
  std::map<Bidegree, int> squares;
  std::map<std::tuple<Side, int, Bidegree>, int> evens;  // (side, l, source)
  std::map<std::tuple<int, Bidegree>, int> odds;          // (k, (p,q))

  // shapes with their counts, ascending
  std::vector<std::pair<ElementaryShape, int>> shapes() const;
  int total_dim() const;
  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;
};

// key under which a shape is counted
void add_shape(MultiplicityTable& t, const ElementaryShape& s, int count = 1);
MultiplicityTable table_of(const std::vector<ElementaryShape>& shapes);

MultiplicityTable decompose(const DoubleComplex& a);
// with the spectral sequences and De Rham data already at hand
MultiplicityTable decompose(const DoubleComplex& a, SpectralSequence& col, SpectralSequence& row,
                            const DeRhamData& dr);
DoubleComplex reconstruct(const MultiplicityTable& t);

// squares, dots, and evens of length <= 2r only
bool zigzag_page_r(const MultiplicityTable& t, int r);
// least such r, or -1 when an odd shape of length >= 3 occurs
int zigzag_minimal_r(const MultiplicityTable& t);

struct SymmetryReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};
// multiplicities invariant under the diagonal and the antidiagonal (about n)
// reflections; needs conj and n
SymmetryReport symmetry_check(const DoubleComplex& a);
ElementaryShape reflect_diagonal(const ElementaryShape& s);
ElementaryShape reflect_antidiagonal(const ElementaryShape& s, int n);

// "dot" (Graphviz) or "tex" (TikZ)
std::string render(const MultiplicityTable& t, const std::string& format);

ojson table_to_json(const MultiplicityTable& t);

}  // namespace bcx
