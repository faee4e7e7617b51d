#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bicomplex/scalar.hpp"

namespace bcx {

using Vec = std::vector<Scalar>;

struct Unsolvable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);
  static Matrix from_columns(const std::vector<Vec>& cols, int rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  std::vector<Vec> row_list() const;
  std::vector<Vec> col_list() const;

  bool is_zero() const;
  Matrix adjoint() const;  // conjugate transpose
  Matrix transpose() const;
  Matrix conj() const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);

  Vec apply(const Vec& x) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  Matrix operator-() const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// In-place reduced row echelon form; zero rows are dropped. Returns pivots.
std::vector<int> echelonize(std::vector<Vec>& rows, int ncols);

std::pair<Matrix, std::vector<int>> rref(const Matrix& m);
int rank(const Matrix& m);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& s, const Vec& a);
bool is_zero(const Vec& v);
Scalar dot(const Vec& a, const Vec& b);    // bilinear
Scalar inner(const Vec& a, const Vec& b);  // sum conj(a_i) b_i
Vec conj(const Vec& v);
Vec unit(int n, int k);

// A linear subspace of the coordinate space of dimension ambient(), stored
// as the nonzero rows of the reduced echelon form of its basis. Two equal
// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : n_(ambient) {}

  static Subspace zero(int n) { return Subspace(n); }
  static Subspace full(int n);
  static Subspace span(std::vector<Vec> vecs, int n);
  static Subspace column_span(const Matrix& m);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  bool is_full() const { return dim() == n_; }
  bool is_zero() const { return rows_.empty(); }

  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }
  Matrix basis() const;  // ambient x dim, columns are the echelon rows

  Vec reduce(const Vec& v) const;  // residual after clearing pivot columns
  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  // Coefficients of v in rows(); v must lie in the subspace.
  Vec coords(const Vec& v) const;
  // Rows y with y.u = 0 for all u here; the subspace is their common kernel.
  std::vector<Vec> annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  int n_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
// {x : m x in s}
Subspace preimage(const Matrix& m, const Subspace& s);
// m(s)
Subspace image_of(const Matrix& m, const Subspace& s);
// Orthogonal complement for the Hermitian form x^H g y (g = identity if empty).
Subspace perp(const Subspace& s, const Matrix& g = Matrix());
// dim u - dim v; requires v inside u.
int quotient_dim(const Subspace& u, const Subspace& v);
// dim u - dim(u ∩ v), no containment requirement.
int quotient_dim_mod(const Subspace& u, const Subspace& v);

std::optional<Vec> solve(const Matrix& m, const Vec& b);
// Unique solution orthogonal to ker m; throws Unsolvable if b is not in Im m.
Vec least_norm_solve(const Matrix& m, const Vec& b);
Matrix inverse(const Matrix& m);
// Left inverse of a full-column-rank matrix.
Matrix left_inverse(const Matrix& m);
// Moore-Penrose pseudo-inverse (for Hermitian positive semidefinite h).
Matrix pseudo_inverse_psd(const Matrix& h);

}  // namespace bcx
