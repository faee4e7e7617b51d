#include <fstream>
#include <sstream>

#include "bicomplex/cohomology.hpp"
#include "bicomplex/models.hpp"
#include "bicomplex/zigzag.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bcx;

namespace {

DoubleComplex from(const std::string& s) { return elementary(parse_shape(s)); }

std::vector<std::pair<ElementaryShape, int>> tally(std::vector<ElementaryShape> v) {
  std::map<ElementaryShape, int> m;
  for (auto& s : v) ++m[s];
  return {m.begin(), m.end()};
}

ElementaryShape only_shape(const DoubleComplex& a) {
  auto sh = decompose(a).shapes();
  REQUIRE(sh.size() == 1);
  REQUIRE(sh[0].second == 1);
  return sh[0].first;
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("elementary shapes decompose to themselves") {
  MultiplicityTable sq = decompose(from("square(0,0)"));
  CHECK(sq.squares.size() == 1);
  CHECK(sq.squares.at({0, 0}) == 1);
  CHECK(sq.evens.empty());
  CHECK(sq.odds.empty());

  MultiplicityTable l = decompose(from("oddL:3(0,0)"));
  REQUIRE(l.odds.size() == 1);
  auto [key, c] = *l.odds.begin();
  CHECK(std::get<1>(key).total() - std::get<0>(key) == 1);
  CHECK(l.shapes()[0].first == parse_shape("oddL:3(0,0)"));

  std::mt19937 g(1);
  for (int it = 0; it < 200; ++it) {
    ElementaryShape s = testutil::rand_shape(g, 6, 9);
    CAPTURE(shape_name(s));
    CHECK(only_shape(elementary(s)) == s);
    MultiplicityTable t;
    add_shape(t, s);
    CHECK(t.shapes().size() == 1);
    CHECK(t.shapes()[0].first == s);
  }
}

TEST_CASE("reconstruct") {
  MultiplicityTable t;
  t.squares[{0, 0}] = 1;
  DoubleComplex a = reconstruct(t);
  CHECK(a.dims() == from("square(0,0)").dims());
  CHECK(reconstruct(MultiplicityTable{}).total_dim() == 0);
}

TEST_CASE("random sums are recovered after scrambling") {
  std::mt19937 g(77);
  int mismatches = 0;
  for (int it = 0; it < 40; ++it) {
    auto shapes = testutil::rand_shapes(g, 12);
    DoubleComplex a = scramble(testutil::sum_of(shapes), g);
    MultiplicityTable t = decompose(a);
    if (t.shapes() != tally(shapes)) ++mismatches;
    // the table built from the shape list is the same object
    CHECK(t == table_of(shapes));
    CHECK(decompose(reconstruct(t)) == t);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("named decompositions") {
  MultiplicityTable iw = decompose(corpus("iwasawa3"));
  for (auto& [s, c] : iw.shapes()) {
    CAPTURE(shape_name(s));
    bool allowed = s.kind == ShapeKind::square || s.kind == ShapeKind::dot ||
                   ((s.kind == ShapeKind::even_type1 || s.kind == ShapeKind::even_type2) && s.length == 2);
    CHECK(allowed);
  }
  CHECK(zigzag_minimal_r(iw) == 1);

  MultiplicityTable h = decompose(corpus("h5_tilde"));
  // the six nonzero d_1 maps each carry one length-2 zigzag on the column side
  int col2 = 0, row2 = 0;
  for (const auto& [key, c] : h.evens) {
    auto [side, l, src] = key;
    CHECK(l == 1);
    (side == Side::column ? col2 : row2) += c;
  }
  CHECK(col2 == 6);
  CHECK(row2 == 6);
}

TEST_CASE("zigzag page criterion") {
  MultiplicityTable sq;
  sq.squares[{0, 0}] = 2;
  CHECK(zigzag_page_r(sq, 0));
  MultiplicityTable ev = table_of({parse_shape("even1:2(0,0)")});
  CHECK(!zigzag_page_r(ev, 0));
  CHECK(zigzag_page_r(ev, 1));
  MultiplicityTable m = table_of({parse_shape("oddM:3(0,1)")});
  for (int r = 0; r <= 6; ++r) CHECK(!zigzag_page_r(m, r));
  CHECK(zigzag_minimal_r(m) == -1);
  MultiplicityTable e6 = table_of({parse_shape("even2:6(0,4)"), parse_shape("dot(1,1)")});
  CHECK(zigzag_minimal_r(e6) == 3);
}

TEST_CASE("reflections agree with transpose and duality") {
  std::mt19937 g(2);
  for (int it = 0; it < 150; ++it) {
    ElementaryShape s = testutil::rand_shape(g, 5, 9);
    CAPTURE(shape_name(s));
    CHECK(only_shape(transpose(elementary(s))) == reflect_diagonal(s));
    for (int n : {4, 5}) CHECK(only_shape(dual_about(elementary(s), n)) == reflect_antidiagonal(s, n));
  }
  // the antidiagonal keeps even types and swaps L with M
  CHECK(reflect_antidiagonal(parse_shape("even1:2(0,0)"), 1) == parse_shape("even1:2(0,1)"));
  CHECK(reflect_antidiagonal(parse_shape("oddL:3(0,0)"), 1).kind == ShapeKind::odd_M);
  CHECK(reflect_diagonal(parse_shape("even1:2(0,0)")) == parse_shape("even2:2(0,0)"));
}

TEST_CASE("symmetry of the corpus tables") {
  for (const std::string name : {"iwasawa3", "h5_tilde", "torus(2)"}) {
    CAPTURE(name);
    SymmetryReport r = symmetry_check(corpus(name));
    CHECK(r.ok);
    for (auto& m : r.mismatches) MESSAGE(m);
  }
  CHECK_THROWS_AS(symmetry_check(from("oddM:3(0,1)")), std::invalid_argument);
}

TEST_CASE("decompose agrees with cohomology on the corpus") {
  for (const std::string& name : corpus_names()) {
    if (name == "iwasawa5") continue;
    CAPTURE(name);
    DoubleComplex a = corpus(name);
    DoubleComplex b = reconstruct(decompose(a));
    CHECK(b.total_dim() == a.total_dim());
    DeRhamData da = de_rham(a), db = de_rham(b);
    CHECK(da.betti == db.betti);
    CHECK(da.pure == db.pure);
    CHECK(da.full == db.full);
    SpectralSequence ca(a, Side::column), cb(b, Side::column), ra(a, Side::row), rb(b, Side::row);
    for (int r = 1; r <= ca.r_max(); ++r)
      for (Bidegree x : ca.bidegrees()) {
        CHECK(ca.e(r, x) == cb.e(r, x));
        CHECK(ra.e(r, x) == rb.e(r, x));
      }
    BcAeppli ba(a), bb(b);
    for (int r = 1; r <= 3; ++r)
      for (Bidegree x : ca.bidegrees()) {
        CHECK(ba.h_bc(r, x) == bb.h_bc(r, x));
        CHECK(ba.h_a(r, x) == bb.h_a(r, x));
      }
  }
}

TEST_CASE("rendering") {
  MultiplicityTable d = table_of({parse_shape("dot(0,0)")});
  std::string dd = render(d, "dot");
  CHECK(count_of(dd, "[pos=") == 1);
  CHECK(count_of(dd, "->") == 0);
  MultiplicityTable sq = table_of({parse_shape("square(0,0)")});
  std::string sd = render(sq, "dot"), st = render(sq, "tex");
  CHECK(count_of(sd, "[pos=") == 4);
  CHECK(count_of(sd, " -> ") == 4);
  CHECK(count_of(st, "\\node") == 4);
  CHECK(count_of(st, "\\draw") == 4);
  CHECK_THROWS_AS(render(sq, "svg"), std::invalid_argument);

  MultiplicityTable iw = decompose(corpus("iwasawa3"));
  std::string text = render(iw, "dot");
  CHECK(render(decompose(corpus("iwasawa3")), "dot") == text);
  std::ifstream in(std::string(BICOMPLEX_TEST_DATA) + "/golden/iwasawa3.dot");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == text);
}
