#include "bicomplex/verdict.hpp"

#include <random>

#include "bicomplex/zigzag.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bcx;

namespace {

ElementaryShape shape(ShapeKind k, Bidegree o, int len) {
  ElementaryShape s;
  s.kind = k;
  s.anchor = o;
  s.length = len;
  return s;
}

// the zigzag criterion read off a shape list by hand
int expected_minimal(const std::vector<ElementaryShape>& shapes) {
  int r = 0;
  for (const auto& s : shapes) switch (s.kind) {
      case ShapeKind::square:
      case ShapeKind::dot: break;
      case ShapeKind::even_type1:
      case ShapeKind::even_type2: r = std::max(r, s.length / 2); break;
      default: return -1;
    }
  return r;
}

}  // namespace

TEST_CASE("elementary shapes") {
  for (auto k : {ShapeKind::square, ShapeKind::dot}) {
    int len = k == ShapeKind::square ? 4 : 1;
    DoubleComplex a = elementary(shape(k, {1, 1}, len));
    Verdict v = characterize(a, 0);
    CHECK(v.unanimous);
    CHECK(v.value());
  }
  for (int l = 1; l <= 3; ++l)
    for (auto k : {ShapeKind::even_type1, ShapeKind::even_type2}) {
      DoubleComplex a = elementary(shape(k, {3, 3}, 2 * l));
      CHECK(minimal_r(a, 4) == l);
      CHECK_FALSE(characterize(a, l - 1).value());
      CHECK(characterize(a, l).value());
    }
  for (int len : {3, 5, 7})
    for (auto k : {ShapeKind::odd_L, ShapeKind::odd_M}) {
      DoubleComplex a = elementary(shape(k, {3, 3}, len));
      VerdictSeries s = verdict_series(a, 4);
      CHECK(s.minimal_r == -1);
      for (const auto& v : s.verdicts) {
        CHECK(v.unanimous);
        CHECK_FALSE(v.char1);
        CHECK_FALSE(v.char2);
        CHECK_FALSE(v.char3);
        CHECK_FALSE(v.char4);
        CHECK_FALSE(v.char5);
      }
    }
}

TEST_CASE("corpus minimal r") {
  CHECK(minimal_r(corpus("torus(1)"), 3) == 0);
  CHECK(minimal_r(corpus("torus(2)"), 3) == 0);
  CHECK(minimal_r(corpus("iwasawa3"), 3) == 1);
  CHECK(minimal_r(corpus("h5_tilde"), 3) == 1);
  CHECK(minimal_r(corpus("ce(0,1)"), 3) == -1);

  DoubleComplex i3 = corpus("iwasawa3");
  Verdict v0 = characterize(i3, 0), v1 = characterize(i3, 1);
  CHECK_FALSE(v0.value());
  CHECK(v0.unanimous);
  CHECK(v1.value());
  CHECK(v1.unanimous);
  CHECK(v1.reasons.empty());
  CHECK_FALSE(v0.reasons.empty());
}

TEST_CASE("ce(1,1) is negative at every page") {
  DoubleComplex a = corpus("ce(1,1)");
  VerdictSeries s = verdict_series(a, default_r_max(a));
  CHECK(s.minimal_r == -1);
  CHECK(s.monotone);
  for (const auto& v : s.verdicts) {
    CHECK(v.unanimous);
    CHECK_FALSE(v.char2);
  }
}

TEST_CASE("page 0 against the ddbar lemma") {
  for (const char* name : {"torus(1)", "torus(2)", "torus(3)"}) {
    Page0Report p = page0_equals_ddbar(corpus(name));
    CHECK(p.page0);
    CHECK(p.ddbar_lemma);
  }
  Page0Report p = page0_equals_ddbar(corpus("iwasawa3"));
  CHECK_FALSE(p.page0);
  CHECK_FALSE(p.ddbar_lemma);

  std::mt19937 g(11);
  std::uniform_int_distribution<int> c(0, 3), n(1, 5);
  for (int i = 0; i < 20; ++i) {
    std::vector<ElementaryShape> shapes;
    int k = n(g);
    for (int j = 0; j < k; ++j)
      shapes.push_back(j % 2 ? shape(ShapeKind::dot, {c(g), c(g)}, 1) : shape(ShapeKind::square, {c(g), c(g)}, 4));
    Page0Report q = page0_equals_ddbar(scramble(testutil::sum_of(shapes), g));
    CHECK(q.page0);
    CHECK(q.ddbar_lemma);
  }
  // a single zigzag breaks both
  Page0Report z = page0_equals_ddbar(elementary(shape(ShapeKind::odd_L, {0, 0}, 3)));
  CHECK_FALSE(z.page0);
  CHECK_FALSE(z.ddbar_lemma);
}

TEST_CASE("random sums: unanimity, monotonicity and the zigzag prediction") {
  std::mt19937 g(2024);
  for (int i = 0; i < 40; ++i) {
    auto shapes = testutil::rand_shapes(g, 6, 4);
    DoubleComplex a = scramble(testutil::sum_of(shapes), g);
    VerdictSeries s = verdict_series(a, 3);  // strict: throws on disagreement
    CHECK(s.monotone);
    int m = expected_minimal(shapes);
    CHECK(s.minimal_r == (m > 3 ? -1 : m));
  }
}

TEST_CASE("Hodge symmetry on the page after a positive verdict") {
  for (const char* name : {"torus(2)", "iwasawa3", "h5_tilde"}) {
    DoubleComplex a = corpus(name);
    int m = minimal_r(a, 3);
    REQUIRE(m >= 0);
    SpectralSequence col(a, Side::column);
    for (Bidegree b : a.support()) CHECK(col.e(m + 1, b) == col.e(m + 1, b.swapped()));
  }
}

TEST_CASE("pure d-exact forms") {
  // on I3, dphi3 = -phi1 phi2 is pure and d-exact in bidegree (2,0)
  DoubleComplex a = corpus("iwasawa3");
  CHECK(pure_d_exact(a, {2, 0}).dim() == 1);
  CHECK(pure_d_exact(a, {0, 0}).dim() == 0);
}

TEST_CASE("full report") {
  ReportOptions opt;
  opt.name = "torus(1)";
  opt.lie = corpus_lie("torus(1)");
  ojson j = full_report(corpus("torus(1)"), opt);
  CHECK(j["valid"] == true);
  CHECK(j["zigzags"]["minimal_r"] == 0);
  for (const auto& v : j["verdicts"]["by_r"]) CHECK(v["page_r_ddbar"] == true);
  CHECK(j["page0_ddbar"]["page0"] == true);
  CHECK(full_report(corpus("torus(1)"), opt).dump() == j.dump());

  DoubleComplex bad;
  bad.set_dim({0, 0}, 1);
  bad.set_dim({1, 0}, 1);
  bad.set_dim({2, 0}, 1);
  Matrix one(1, 1);
  one(0, 0) = 1;
  bad.set_d1({0, 0}, one);
  bad.set_d1({1, 0}, one);
  ojson e = full_report(bad);
  CHECK(e["valid"] == false);
  CHECK_FALSE(e["errors"].empty());
  CHECK(e.size() == 2);
  CHECK_FALSE(e.contains("spectral"));
}
