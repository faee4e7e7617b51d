#include <set>

#include "bicomplex/models.hpp"
#include "doctest.h"

using namespace bcx;

namespace {

// dim ker d2 - rank of incoming d2, by direct ranks
int dolbeault(const DoubleComplex& a, Bidegree b) {
  return a.dim(b) - rank(a.d2(b)) - rank(a.d2({b.p, b.q - 1}));
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("wedge signs") {
  CHECK(wedge_sign(0b01, 0b10) == 1);
  CHECK(wedge_sign(0b10, 0b01) == -1);
  CHECK(wedge_sign(0b11, 0b01) == 0);
  CHECK(wedge_sign(0b110, 0b001) == 1);
  CHECK(wedge_sign(0b100, 0b011) == 1);
  CHECK(wedge_sign(0b010, 0b101) == -1);
}

TEST_CASE("torus and Iwasawa models") {
  DoubleComplex t = corpus("torus(1)");
  CHECK(t.support().size() == 4);
  CHECK(t.d1_map().empty());
  CHECK(t.d2_map().empty());

  LieModel iw = *corpus_lie("iwasawa3");
  DoubleComplex a = iw.complex();
  CHECK(validate(a).empty());
  // del phi3 = -phi1^phi2; phi3 is basis index 2 of (1,0), phi1^phi2 index 0 of (2,0)
  CHECK(a.d1({1, 0})(0, 2) == Scalar(-1));
  CHECK(iw.form_str(iw.del({{Mask(1) << 2, Scalar(1)}})) == "-1*phi1^phi2");
  // dbar vanishes on (p,0)
  for (int p = 0; p <= 3; ++p) CHECK(a.d2({p, 0}).is_zero());
  CHECK(iw.parallelisable());
  CHECK(iw.bracket_constant(0, 1, 2) == Scalar(1));

  LieModel i5 = *corpus_lie("iwasawa5");
  CHECK(i5.complex().dim({2, 1}) == 50);
  CHECK(corpus("iwasawa5").dim({0, 1}) == 5);
  CHECK(i5.bracket_constant(0, 1, 2) == Scalar(-1));
  CHECK(i5.bracket_constant(0, 2, 3) == Scalar(-1));
  CHECK(i5.bracket_constant(1, 2, 4) == Scalar(-1));
  CHECK(i5.bracket_constant(1, 0, 2) == Scalar(1));
  auto z = i5.centre();
  CHECK(z.size() == 2);
  CHECK(Subspace::span(z, 5) == Subspace::span({unit(5, 3), unit(5, 4)}, 5));

  LieModel h = *corpus_lie("h5_tilde");
  CHECK(!h.parallelisable());
  CHECK(h.gen_name() == "tau");
}

TEST_CASE("every Lie corpus model is valid, symmetric and carries conj") {
  for (const std::string name : {"torus(1)", "torus(2)", "torus(3)", "iwasawa3", "iwasawa5", "h5_tilde"}) {
    LieModel m = *corpus_lie(name);
    DoubleComplex a = m.complex();
    CAPTURE(name);
    CHECK(validate(a).empty());
    CHECK(a.has_conj());
    for (auto b : a.support()) {
      CHECK(a.dim(b) == a.dim(b.swapped()));
      CHECK(a.dim(b) == binom(m.n(), b.p) * binom(m.n(), b.q));
    }
  }
}

TEST_CASE("parallelisable models are the tensor product of their edge complexes") {
  for (const std::string name : {"iwasawa3", "iwasawa5", "torus(2)"}) {
    DoubleComplex a = corpus(name);
    DoubleComplex row, col;
    int n = *a.n;
    for (int k = 0; k <= n; ++k) {
      row.set_dim({k, 0}, a.dim({k, 0}));
      col.set_dim({0, k}, a.dim({0, k}));
    }
    for (int k = 0; k < n; ++k) {
      row.set_d1({k, 0}, a.d1({k, 0}));
      col.set_d2({0, k}, a.d2({0, k}));
    }
    DoubleComplex t = tensor(row, col);
    CAPTURE(name);
    CHECK(t.dims() == a.dims());
    for (auto b : a.support()) {
      CHECK(t.d1(b) == a.d1(b));
      CHECK(t.d2(b) == a.d2(b));
    }
  }
}

TEST_CASE("DSL errors") {
  CHECK_THROWS_AS(parse_structure_equations("dphi1=0\ndphi2=0\ndphi3 = ~phi1^~phi2"), IntegrabilityViolation);
  CHECK_THROWS_AS(parse_structure_equations("dphi3 = phi1^phi2; dphi4 = phi3^phi5; dphi5 = phi1^phi2"), JacobiViolation);
  try {
    parse_structure_equations("dphi1 = 0\ndphi2 = phi1 ^ @");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2, column 16") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_structure_equations("dphi1 = phi1"), ParseError);
  CHECK_THROWS_AS(parse_structure_equations("dphi1 = tau1^tau2"), ParseError);

  LieModel m = parse_structure_equations("dphi1=0; dphi2=0 # comment\ndphi3 = (1/2+i)*phi1^phi2 - 2*phi2^~phi1");
  CHECK(m.n() == 3);
  CHECK(m.structure()[2].size() == 2);
  CHECK(m.structure()[2].at(0b000011) == Scalar::parse("1/2+1*i"));
  // phi2^~phi1 is stored as +phi2^~phi1 (mask bit1 | bit3) with coefficient -2
  CHECK(m.structure()[2].at(0b001010) == Scalar(-2));
}

TEST_CASE("Calabi-Eckmann models") {
  DoubleComplex c = calabi_eckmann_model(1, 1);
  CHECK(validate(c).empty());
  // 1, x01, x11, x01x11, y, x11^2, x, x*x01, x*x11, x*x01*x11
  CHECK(c.total_dim() == 10);
  std::set<Bidegree> expected{{0, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}, {3, 3}};
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(dolbeault(c, {p, q}) == (expected.count({p, q}) ? 1 : 0));
    }
  DoubleComplex h = calabi_eckmann_model(0, 1);
  CHECK(validate(h).empty());
  CHECK(h.total_dim() == 6);
  CHECK_THROWS_AS(calabi_eckmann_model(2, 1), UnknownModel);
  CHECK_THROWS_AS(corpus("nope"), UnknownModel);
  CHECK(corpus("oddL:3(0,0)").total_dim() == 3);
}

TEST_CASE("cdga parser") {
  CdgaModel m = parse_cdga("n = 2\ngen a (1,0) odd\ngen b (0,1) odd\ndbar a = 0\n");
  CHECK(m.gens.size() == 2);
  DoubleComplex c = cdga_complex(m);
  CHECK(c.total_dim() == 4);
  CHECK_THROWS_AS(parse_cdga("gen a (1,0) odd\n"), ParseError);
  CHECK_THROWS_AS(cdga_complex(parse_cdga("n = 1\ngen a (1,1) odd\n")), InvalidComplex);
}
