#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"

using namespace bcx;
using testutil::rand_invertible;
using testutil::rand_matrix;
using testutil::rand_rank;

TEST_CASE("scalar text round trip") {
  for (const char* s : {"0", "3", "-1/2", "1/2+3/4*i", "0+1*i", "-5/7-2*i", "0-1/3*i"}) {
    Scalar x = Scalar::parse(s);
    CHECK(x.str() == s);
    CHECK(Scalar::parse(x.str()) == x);
  }
  CHECK(Scalar::parse("i") == Scalar(0, 1));
  CHECK(Scalar::parse("-i") == Scalar(0, -1));
  CHECK(Scalar::parse(" 2 - 3*i ") == Scalar(2, -3));
  CHECK(Scalar::parse("4/6").str() == "2/3");
  CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(""), ParseError);
}

TEST_CASE("scalar field axioms on samples") {
  std::mt19937 g(7);
  for (int t = 0; t < 200; ++t) {
    Scalar a = testutil::rand_scalar(g), b = testutil::rand_scalar(g), c = testutil::rand_scalar(g);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a.norm2() >= 0);
    CHECK((a.norm2() == 0) == a.is_zero());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("rref examples") {
  auto [r, piv] = rref(Matrix::identity(3));
  CHECK(r == Matrix::identity(3));
  CHECK(piv == std::vector<int>{0, 1, 2});
  auto [z, zp] = rref(Matrix(2, 2));
  CHECK(z.is_zero());
  CHECK(zp.empty());
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = Scalar::i();
  m(1, 0) = Scalar::i();
  m(1, 1) = -1;
  auto [rm, pm] = rref(m);
  CHECK(pm.size() == 1);
  CHECK(rm(0, 0) == Scalar(1));
  CHECK(rm(0, 1) == Scalar::i());
  CHECK(rm(1, 0).is_zero());
  CHECK(rm(1, 1).is_zero());
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Matrix::identity(3)).dim() == 0);
  CHECK(kernel(Matrix(3, 4)).is_full());
  Matrix m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = Scalar::i();
  Subspace k = kernel(m);
  CHECK(k.dim() == 1);
  CHECK(k == Subspace::span({Vec{Scalar(0, -1), Scalar(1)}}, 2));
}

TEST_CASE("rank nullity and echelon canonicity on random matrices") {
  std::mt19937 g(11);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + t % 6, c = 1 + (t * 7) % 7;
    int k = std::min({r, c, t % 4});
    Matrix m = rand_rank(g, r, c, k);
    CHECK(rank(m) + kernel(m).dim() == c);
    CHECK(rank(m) <= k);
    Matrix km = kernel(m).basis();
    CHECK((m * km).is_zero());

    // same space from two random bases
    Matrix b = rand_matrix(g, c, 3);
    Subspace s1 = Subspace::column_span(b);
    Matrix p = rand_invertible(g, 3);
    Subspace s2 = Subspace::column_span(b * p);
    CHECK(s1 == s2);
    CHECK(Subspace::span(s1.rows(), c) == s1);
  }
}

TEST_CASE("subspace lattice identities") {
  std::mt19937 g(5);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 6;
    Subspace u = Subspace::column_span(rand_rank(g, n, 4, 1 + t % 3));
    Subspace v = Subspace::column_span(rand_rank(g, n, 4, 1 + (t / 3) % 3));
    Subspace s = sum(u, v), i = intersect(u, v);
    CHECK(s.dim() + i.dim() == u.dim() + v.dim());
    CHECK(s.contains(u));
    CHECK(u.contains(i));
    CHECK(v.contains(i));
    CHECK(intersect(Subspace::full(n), v) == v);
    CHECK(quotient_dim_mod(u, v) == u.dim() - i.dim());
    CHECK(quotient_dim(s, u) == s.dim() - u.dim());
    for (const auto& y : u.annihilator())
      for (const auto& x : u.rows()) CHECK(dot(y, x).is_zero());

    Matrix m = rand_matrix(g, n, n + 1);
    Subspace pre = preimage(m, v);
    for (const auto& x : pre.rows()) CHECK(v.contains(m.apply(x)));
    CHECK(pre.contains(kernel(m)));
    CHECK(pre.dim() == kernel(m).dim() + intersect(image(m), v).dim());
  }
  CHECK(sum(Subspace::span({unit(2, 0)}, 2), Subspace::span({unit(2, 1)}, 2)).is_full());
  CHECK_THROWS_AS(intersect(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
  CHECK_THROWS_AS(quotient_dim(Subspace::span({unit(2, 0)}, 2), Subspace::span({unit(2, 1)}, 2)),
                  DimensionMismatch);
}

TEST_CASE("least norm solve") {
  CHECK(least_norm_solve(Matrix::identity(2), Vec{Scalar(3), Scalar(0, 1)}) == Vec{Scalar(3), Scalar(0, 1)});
  Matrix m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  CHECK(least_norm_solve(m, Vec{Scalar(2)}) == Vec{Scalar(1), Scalar(1)});
  CHECK(is_zero(least_norm_solve(Matrix(2, 3), Vec(2))));
  CHECK_THROWS_AS(least_norm_solve(Matrix(1, 1), Vec{Scalar(1)}), Unsolvable);

  std::mt19937 g(3);
  for (int t = 0; t < 40; ++t) {
    int r = 1 + t % 5, c = 1 + (t * 3) % 6;
    Matrix a = rand_rank(g, r, c, std::min(r, c) > 1 ? std::min(r, c) - 1 : 1);
    Vec b = a.apply(rand_matrix(g, c, 1).col(0));
    Vec x = least_norm_solve(a, b);
    CHECK(a.apply(x) == b);
    Subspace ka = kernel(a);
    for (const auto& k : ka.rows()) CHECK(inner(k, x).is_zero());
  }
}

TEST_CASE("pseudo inverse of psd") {
  std::mt19937 g(9);
  for (int t = 0; t < 20; ++t) {
    Matrix a = rand_rank(g, 4, 5, 1 + t % 3);
    Matrix h = a.adjoint() * a;
    Matrix hp = pseudo_inverse_psd(h);
    CHECK(h * hp * h == h);
    CHECK(hp * h * hp == hp);
    CHECK((h * hp).adjoint() == h * hp);
  }
}
