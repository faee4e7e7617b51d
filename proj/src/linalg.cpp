#include "bicomplex/linalg.hpp"

#include <string>

namespace bcx {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.r_; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.c_; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Vec Matrix::row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_); }

Vec Matrix::col(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  for (int i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

std::vector<Vec> Matrix::col_list() const {
  std::vector<Vec> out;
  for (int j = 0; j < c_; ++j) out.push_back(col(j));
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::adjoint() const {
  Matrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j).conj();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::conj() const {
  Matrix m = *this;
  for (auto& s : m.a_) s = s.conj();
  return m;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != c_) throw DimensionMismatch("apply: vector length");
  Vec y(r_);
  for (int j = 0; j < c_; ++j) {
    if (x[j].is_zero()) continue;
    for (int i = 0; i < r_; ++i) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero()) y[i] += a * x[j];
    }
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw DimensionMismatch("matrix product " + std::to_string(a.r_) + "x" + std::to_string(a.c_) + " * " + std::to_string(b.r_) + "x" + std::to_string(b.c_));
  Matrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.c_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw DimensionMismatch("matrix sum");
  Matrix m = a;
  for (size_t k = 0; k < m.a_.size(); ++k)
    if (!b.a_[k].is_zero()) m.a_[k] += b.a_[k];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix m = a;
  for (auto& x : m.a_)
    if (!x.is_zero()) x *= s;
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_)
    if (!x.is_zero()) x = -x;
  return m;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

std::vector<int> echelonize(std::vector<Vec>& rows, int ncols) {
  std::vector<int> piv;
  size_t r = 0;
  std::vector<int> nz;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    size_t sel = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (!rows[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Vec& pr = rows[r];
    if (!pr[c].is_one()) {
      Scalar inv = pr[c].inv();
      for (int j = c; j < ncols; ++j)
        if (!pr[j].is_zero()) pr[j] *= inv;
    }
    nz.clear();
    for (int j = c; j < ncols; ++j)
      if (!pr[j].is_zero()) nz.push_back(j);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c];
      Vec& ri = rows[i];
      for (int j : nz) ri[j].sub_mul(f, pr[j]);
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

std::pair<Matrix, std::vector<int>> rref(const Matrix& m) {
  std::vector<Vec> rows = m.row_list();
  auto piv = echelonize(rows, m.cols());
  Matrix out(m.rows(), m.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(static_cast<int>(i), j) = rows[i][j];
  return {out, piv};
}

int rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<Vec> rows = m.row_list();
  return static_cast<int>(echelonize(rows, m.cols()).size());
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum");
  Vec c = a;
  for (size_t i = 0; i < c.size(); ++i)
    if (!b[i].is_zero()) c[i] += b[i];
  return c;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference");
  Vec c = a;
  for (size_t i = 0; i < c.size(); ++i)
    if (!b[i].is_zero()) c[i] -= b[i];
  return c;
}

Vec operator*(const Scalar& s, const Vec& a) {
  Vec c = a;
  for (auto& x : c)
    if (!x.is_zero()) x *= s;
  return c;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Scalar dot(const Vec& a, const Vec& b) {
  Scalar s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Scalar inner(const Vec& a, const Vec& b) {
  Scalar s;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i].conj() * b[i];
  return s;
}

Vec conj(const Vec& v) {
  Vec c = v;
  for (auto& x : c) x = x.conj();
  return c;
}

Vec unit(int n, int k) {
  Vec v(n);
  v[k] = 1;
  return v;
}

Subspace Subspace::full(int n) {
  Subspace s(n);
  for (int i = 0; i < n; ++i) {
    s.rows_.push_back(unit(n, i));
    s.piv_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(std::vector<Vec> vecs, int n) {
  Subspace s(n);
  for (const auto& v : vecs)
    if (static_cast<int>(v.size()) != n) throw DimensionMismatch("span: vector length");
  s.piv_ = echelonize(vecs, n);
  s.rows_ = std::move(vecs);
  return s;
}

Subspace Subspace::column_span(const Matrix& m) { return span(m.col_list(), m.rows()); }

Matrix Subspace::basis() const { return Matrix::from_columns(rows_, n_); }

Vec Subspace::reduce(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("reduce: ambient mismatch");
  Vec w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar f = w[piv_[i]];
    if (f.is_zero()) continue;
    const Vec& r = rows_[i];
    for (int j = piv_[i]; j < n_; ++j)
      if (!r[j].is_zero()) w[j].sub_mul(f, r[j]);
  }
  return w;
}

bool Subspace::contains(const Vec& v) const { return bcx::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  if (o.n_ != n_) throw DimensionMismatch("contains: ambient mismatch");
  if (o.dim() > dim()) return false;
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]];
  return c;
}

std::vector<Vec> Subspace::annihilator() const {
  std::vector<bool> is_piv(n_, false);
  for (int p : piv_) is_piv[p] = true;
  std::vector<Vec> out;
  for (int f = 0; f < n_; ++f) {
    if (is_piv[f]) continue;
    Vec y(n_);
    y[f] = 1;
    for (size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i][f].is_zero()) y[piv_[i]] = -rows_[i][f];
    out.push_back(std::move(y));
  }
  return out;
}

Subspace kernel(const Matrix& m) {
  std::vector<Vec> rows = m.row_list();
  auto piv = echelonize(rows, m.cols());
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec> null;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec x(m.cols());
    x[f] = 1;
    for (size_t i = 0; i < rows.size(); ++i)
      if (!rows[i][f].is_zero()) x[piv[i]] = -rows[i][f];
    null.push_back(std::move(x));
  }
  return Subspace::span(std::move(null), m.cols());
}

Subspace image(const Matrix& m) { return Subspace::column_span(m); }

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("sum: ambient mismatch");
  if (a.is_zero() || b.is_full()) return b;
  if (b.is_zero() || a.is_full()) return a;
  std::vector<Vec> v = a.rows();
  v.insert(v.end(), b.rows().begin(), b.rows().end());
  return Subspace::span(std::move(v), a.ambient());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("intersect: ambient mismatch");
  if (a.is_full() || b.is_zero()) return b;
  if (b.is_full() || a.is_zero()) return a;
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  std::vector<Vec> c = a.annihilator();
  auto cb = b.annihilator();
  c.insert(c.end(), cb.begin(), cb.end());
  return kernel(Matrix::from_rows(c, a.ambient()));
}

Subspace preimage(const Matrix& m, const Subspace& s) {
  if (m.rows() != s.ambient()) throw DimensionMismatch("preimage: ambient mismatch");
  if (s.is_full()) return Subspace::full(m.cols());
  auto ann = s.annihilator();
  return kernel(Matrix::from_rows(ann, m.rows()) * m);
}

Subspace image_of(const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw DimensionMismatch("image_of: ambient mismatch");
  std::vector<Vec> v;
  for (const auto& r : s.rows()) v.push_back(m.apply(r));
  return Subspace::span(std::move(v), m.rows());
}

Subspace perp(const Subspace& s, const Matrix& g) {
  int n = s.ambient();
  Matrix c = Matrix::from_rows(s.rows(), n).conj();
  if (g.rows() != 0) c = c * g;
  return kernel(c);
}

int quotient_dim(const Subspace& u, const Subspace& v) {
  if (!u.contains(v)) throw DimensionMismatch("quotient_dim: denominator is not a subspace of numerator");
  return u.dim() - v.dim();
}

int quotient_dim_mod(const Subspace& u, const Subspace& v) { return u.dim() - intersect(u, v).dim(); }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw DimensionMismatch("solve: rhs length");
  std::vector<Vec> rows = m.row_list();
  for (int i = 0; i < m.rows(); ++i) rows[i].push_back(b[i]);
  auto piv = echelonize(rows, m.cols() + 1);
  Vec x(m.cols());
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == m.cols()) return std::nullopt;
    x[piv[i]] = rows[i][m.cols()];
  }
  return x;
}

Vec least_norm_solve(const Matrix& m, const Vec& b) {
  Matrix ma = m.adjoint();
  auto y = solve(m * ma, b);
  if (!y) throw Unsolvable("right-hand side is not in the image");
  return ma.apply(*y);
}

Matrix inverse(const Matrix& a) {
  int n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  if (n == 0) return a;
  Matrix aug = hstack(a, Matrix::identity(n));
  auto [r, piv] = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw Unsolvable("singular matrix");
  return r.block(0, n, n, n);
}

Matrix left_inverse(const Matrix& m) {
  Matrix ma = m.adjoint();
  return inverse(ma * m) * ma;
}

Matrix pseudo_inverse_psd(const Matrix& h) {
  Subspace im = image(h);
  if (im.is_zero()) return Matrix(h.cols(), h.rows());
  Matrix b = im.basis();
  Matrix ba = b.adjoint();
  return b * inverse(ba * h * b) * ba;
}

}  // namespace bcx
