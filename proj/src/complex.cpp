#include "bicomplex/complex.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace bcx {

namespace {
const Bidegree kE1{1, 0}, kE2{0, 1};

std::string at(Bidegree b) { return " at (" + b.key() + ")"; }
}  // namespace

int DoubleComplex::dim(Bidegree b) const {
  auto it = dims_.find(b);
  return it == dims_.end() ? 0 : it->second;
}

void DoubleComplex::set_dim(Bidegree b, int d) {
  if (d < 0) throw InvalidComplex("negative dimension" + at(b));
  if (d == 0)
    dims_.erase(b);
  else
    dims_[b] = d;
}

Matrix DoubleComplex::d1(Bidegree b) const {
  auto it = d1_.find(b);
  if (it != d1_.end()) return it->second;
  return Matrix(dim(b + kE1), dim(b));
}

Matrix DoubleComplex::d2(Bidegree b) const {
  auto it = d2_.find(b);
  if (it != d2_.end()) return it->second;
  return Matrix(dim(b + kE2), dim(b));
}

void DoubleComplex::set_d1(Bidegree b, Matrix m) {
  if (m.rows() != dim(b + kE1) || m.cols() != dim(b)) throw InvalidComplex("d1 shape" + at(b));
  if (m.is_zero())
    d1_.erase(b);
  else
    d1_[b] = std::move(m);
}

void DoubleComplex::set_d2(Bidegree b, Matrix m) {
  if (m.rows() != dim(b + kE2) || m.cols() != dim(b)) throw InvalidComplex("d2 shape" + at(b));
  if (m.is_zero())
    d2_.erase(b);
  else
    d2_[b] = std::move(m);
}

Matrix DoubleComplex::conj(Bidegree b) const {
  if (!conj_) throw InvalidComplex("complex has no conjugation");
  auto it = conj_->find(b);
  if (it != conj_->end()) return it->second;
  return Matrix(dim(b.swapped()), dim(b));
}

void DoubleComplex::set_conj(Bidegree b, Matrix m) {
  if (m.rows() != dim(b.swapped()) || m.cols() != dim(b)) throw InvalidComplex("conj shape" + at(b));
  enable_conj();
  (*conj_)[b] = std::move(m);
}

const std::map<Bidegree, Matrix>& DoubleComplex::conj_map() const {
  if (!conj_) throw InvalidComplex("complex has no conjugation");
  return *conj_;
}

std::vector<Bidegree> DoubleComplex::support() const {
  std::vector<Bidegree> out;
  for (const auto& [b, d] : dims_)
    if (d > 0) out.push_back(b);
  return out;
}

Box DoubleComplex::box() const {
  Box bx;
  bool first = true;
  for (const auto& [b, d] : dims_) {
    if (d == 0) continue;
    if (first) {
      bx = {b.p, b.p, b.q, b.q};
      first = false;
    }
    bx.pmin = std::min(bx.pmin, b.p);
    bx.pmax = std::max(bx.pmax, b.p);
    bx.qmin = std::min(bx.qmin, b.q);
    bx.qmax = std::max(bx.qmax, b.q);
  }
  return bx;
}

int DoubleComplex::total_dim() const {
  int s = 0;
  for (const auto& [b, d] : dims_) s += d;
  return s;
}

int DoubleComplex::max_total_degree() const {
  int m = INT_MIN;
  for (const auto& [b, d] : dims_)
    if (d > 0) m = std::max(m, b.total());
  return m == INT_MIN ? 0 : m;
}

int DoubleComplex::min_total_degree() const {
  int m = INT_MAX;
  for (const auto& [b, d] : dims_)
    if (d > 0) m = std::min(m, b.total());
  return m == INT_MAX ? 0 : m;
}

std::vector<std::string> validate(const DoubleComplex& a) {
  std::vector<std::string> bad;
  auto check_shape = [&](const std::map<Bidegree, Matrix>& mp, Bidegree step, const char* name) {
    for (const auto& [b, m] : mp)
      if (m.rows() != a.dim(b + step) || m.cols() != a.dim(b))
        bad.push_back(std::string(name) + " has wrong shape" + at(b));
  };
  check_shape(a.d1_map(), kE1, "d1");
  check_shape(a.d2_map(), kE2, "d2");
  if (!bad.empty()) return bad;
  for (Bidegree b : a.support()) {
    Matrix m1 = a.d1(b), m2 = a.d2(b);
    if (!(a.d1(b + kE1) * m1).is_zero()) bad.push_back("d1∘d1 ≠ 0" + at(b));
    if (!(a.d2(b + kE2) * m2).is_zero()) bad.push_back("d2∘d2 ≠ 0" + at(b));
    if (!(a.d1(b + kE2) * m2 + a.d2(b + kE1) * m1).is_zero()) bad.push_back("d1∘d2 + d2∘d1 ≠ 0" + at(b));
  }
  if (a.has_conj()) {
    for (const auto& [b, m] : a.conj_map())
      if (m.rows() != a.dim(b.swapped()) || m.cols() != a.dim(b)) bad.push_back("conj has wrong shape" + at(b));
    if (!bad.empty()) return bad;
    for (Bidegree b : a.support()) {
      Bidegree s = b.swapped();
      if (a.dim(s) != a.dim(b)) {
        bad.push_back("conj: dimension asymmetry" + at(b));
        continue;
      }
      if (!(a.conj(s) * a.conj(b).conj() == Matrix::identity(a.dim(b))))
        bad.push_back("conj∘conj ≠ id" + at(b));
      if (!(a.conj(b + kE1) * a.d1(b).conj() == a.d2(s) * a.conj(b)))
        bad.push_back("conj does not intertwine d1 with d2" + at(b));
    }
  }
  return bad;
}

void require_valid(const DoubleComplex& a) {
  auto bad = validate(a);
  if (!bad.empty()) throw InvalidComplex(bad.front());
}

std::string kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::square: return "square";
    case ShapeKind::dot: return "dot";
    case ShapeKind::even_type1: return "even1";
    case ShapeKind::even_type2: return "even2";
    case ShapeKind::odd_M: return "oddM";
    case ShapeKind::odd_L: return "oddL";
  }
  return "?";
}

ShapeKind parse_kind(const std::string& s) {
  for (ShapeKind k : {ShapeKind::square, ShapeKind::dot, ShapeKind::even_type1, ShapeKind::even_type2,
                      ShapeKind::odd_M, ShapeKind::odd_L})
    if (kind_name(k) == s) return k;
  throw InvalidComplex("unknown shape kind '" + s + "'");
}

std::string shape_name(const ElementaryShape& s) {
  std::string out = kind_name(s.kind);
  if (s.kind != ShapeKind::square && s.kind != ShapeKind::dot) out += ":" + std::to_string(s.length);
  return out + "(" + s.anchor.key() + ")";
}

ElementaryShape parse_shape(const std::string& s) {
  // kind[:length](p,q)
  auto lp = s.find('(');
  auto rp = s.find(')');
  auto comma = s.find(',');
  if (lp == std::string::npos || rp == std::string::npos || comma == std::string::npos || rp != s.size() - 1)
    throw InvalidComplex("malformed shape '" + s + "'");
  std::string head = s.substr(0, lp);
  size_t d = head.find(':');
  ElementaryShape sh;
  sh.kind = parse_kind(head.substr(0, d));
  sh.length = sh.kind == ShapeKind::square ? 4 : 1;
  if (d != std::string::npos) sh.length = std::stoi(head.substr(d + 1));
  sh.anchor = {std::stoi(s.substr(lp + 1, comma - lp - 1)), std::stoi(s.substr(comma + 1, rp - comma - 1))};
  return sh;
}

DoubleComplex elementary(const ElementaryShape& s) {
  DoubleComplex a;
  const Bidegree o = s.anchor;
  auto one = [] {
    Matrix m(1, 1);
    m(0, 0) = 1;
    return m;
  };
  auto neg_one = [] {
    Matrix m(1, 1);
    m(0, 0) = -1;
    return m;
  };
  switch (s.kind) {
    case ShapeKind::dot:
      if (s.length != 1) throw InvalidComplex("dot has length 1");
      a.set_dim(o, 1);
      return a;
    case ShapeKind::square:
      if (s.length != 4) throw InvalidComplex("square has length 4");
      for (Bidegree b : {o, o + kE1, o + kE2, o + kE1 + kE2}) a.set_dim(b, 1);
      a.set_d1(o, one());
      a.set_d2(o, one());
      a.set_d1(o + kE2, one());
      a.set_d2(o + kE1, neg_one());
      return a;
    default:
      break;
  }
  int m = 0;
  bool left = false, right = false;
  int len = s.length;
  switch (s.kind) {
    case ShapeKind::odd_L:
      if (len < 3 || len % 2 == 0) throw InvalidComplex("odd_L needs odd length >= 3");
      m = (len - 1) / 2;
      left = right = true;
      break;
    case ShapeKind::odd_M:
      if (len < 3 || len % 2 == 0) throw InvalidComplex("odd_M needs odd length >= 3");
      m = (len + 1) / 2;
      break;
    case ShapeKind::even_type1:
      if (len < 2 || len % 2) throw InvalidComplex("even zigzag needs even length >= 2");
      m = len / 2;
      right = true;
      break;
    case ShapeKind::even_type2:
      if (len < 2 || len % 2) throw InvalidComplex("even zigzag needs even length >= 2");
      m = len / 2;
      left = true;
      break;
    default:
      break;
  }
  // generator a_i sits at (p0+i-1, q0-i+1); d1 a_i = -d2 a_{i+1}
  auto gen = [&](int i) { return Bidegree{o.p + i - 1, o.q - i + 1}; };
  for (int i = 1; i <= m; ++i) a.set_dim(gen(i), 1);
  for (int i = 1; i < m; ++i) a.set_dim(gen(i) + kE1, 1);
  if (right) a.set_dim(gen(m) + kE1, 1);
  if (left) a.set_dim(gen(1) + kE2, 1);
  for (int i = 1; i <= m; ++i) {
    if (i < m || right) a.set_d1(gen(i), one());
    if (i > 1) a.set_d2(gen(i), neg_one());
  }
  if (left) a.set_d2(gen(1), one());
  return a;
}

namespace {

// Block-diagonal assembly of a per-bidegree matrix family.
Matrix block_diag(const Matrix& x, const Matrix& y) {
  Matrix m(x.rows() + y.rows(), x.cols() + y.cols());
  m.set_block(0, 0, x);
  m.set_block(x.rows(), x.cols(), y);
  return m;
}

std::optional<int> merge_n(const DoubleComplex& a, const DoubleComplex& b) {
  if (a.n && b.n) return *a.n == *b.n ? a.n : std::nullopt;
  return a.n ? a.n : b.n;
}

}  // namespace

DoubleComplex direct_sum(const DoubleComplex& a, const DoubleComplex& b) {
  DoubleComplex c;
  std::set<Bidegree> keys;
  for (auto x : a.support()) keys.insert(x);
  for (auto x : b.support()) keys.insert(x);
  for (auto k : keys) c.set_dim(k, a.dim(k) + b.dim(k));
  for (auto k : keys) {
    c.set_d1(k, block_diag(a.d1(k), b.d1(k)));
    c.set_d2(k, block_diag(a.d2(k), b.d2(k)));
  }
  c.n = merge_n(a, b);
  if (a.has_conj() && b.has_conj()) {
    c.enable_conj();
    for (auto k : keys) c.set_conj(k, block_diag(a.conj(k), b.conj(k)));
  }
  return c;
}

DoubleComplex tensor(const DoubleComplex& a, const DoubleComplex& b) {
  // basis of C^{p,q}: pairs (x in A^{s}, y in B^{t}) with s+t=(p,q), ordered
  // by s ascending, then x index major, y index minor
  struct Part {
    Bidegree s, t;
    int offset;
  };
  std::map<Bidegree, std::vector<Part>> parts;
  std::map<Bidegree, int> dims;
  for (auto s : a.support())
    for (auto t : b.support()) {
      Bidegree k = s + t;
      parts[k].push_back({s, t, dims[k]});
      dims[k] += a.dim(s) * b.dim(t);
    }
  DoubleComplex c;
  for (auto& [k, d] : dims) c.set_dim(k, d);
  auto find = [&](Bidegree k, Bidegree s) -> const Part* {
    auto it = parts.find(k);
    if (it == parts.end()) return nullptr;
    for (const auto& p : it->second)
      if (p.s == s) return &p;
    return nullptr;
  };
  for (const auto& [k, plist] : parts) {
    for (int which = 0; which < 2; ++which) {
      Bidegree step = which == 0 ? kE1 : kE2;
      Bidegree tk = k + step;
      Matrix m(c.dim(tk), c.dim(k));
      for (const auto& pt : plist) {
        int db = b.dim(pt.t);
        int sign = (pt.s.total() % 2 == 0) ? 1 : -1;
        Matrix da = which == 0 ? a.d1(pt.s) : a.d2(pt.s);
        Matrix dbm = which == 0 ? b.d1(pt.t) : b.d2(pt.t);
        // d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy
        if (const Part* tgt = find(tk, pt.s + step); tgt && !da.is_zero()) {
          for (int i = 0; i < da.rows(); ++i)
            for (int j = 0; j < da.cols(); ++j) {
              if (da(i, j).is_zero()) continue;
              for (int y = 0; y < db; ++y) m(tgt->offset + i * db + y, pt.offset + j * db + y) += da(i, j);
            }
        }
        if (const Part* tgt = find(tk, pt.s); tgt && !dbm.is_zero()) {
          int dbt = b.dim(pt.t + step);
          for (int x = 0; x < a.dim(pt.s); ++x)
            for (int i = 0; i < dbm.rows(); ++i)
              for (int j = 0; j < dbm.cols(); ++j) {
                if (dbm(i, j).is_zero()) continue;
                m(tgt->offset + x * dbt + i, pt.offset + x * db + j) += Scalar(sign) * dbm(i, j);
              }
        }
      }
      if (which == 0)
        c.set_d1(k, m);
      else
        c.set_d2(k, m);
    }
  }
  if (a.n && b.n) c.n = *a.n + *b.n;
  if (a.has_conj() && b.has_conj()) {
    // conj(x⊗y) = conj(x)⊗conj(y), no sign: the bigraded swap preserves order
    c.enable_conj();
    for (const auto& [k, plist] : parts) {
      Bidegree ks = k.swapped();
      Matrix m(c.dim(ks), c.dim(k));
      for (const auto& pt : plist) {
        const Part* tgt = find(ks, pt.s.swapped());
        Matrix ca = a.conj(pt.s), cb = b.conj(pt.t);
        int db = b.dim(pt.t);
        for (int i = 0; i < ca.rows(); ++i)
          for (int j = 0; j < ca.cols(); ++j) {
            if (ca(i, j).is_zero()) continue;
            for (int y = 0; y < cb.rows(); ++y)
              for (int z = 0; z < cb.cols(); ++z) {
                if (cb(y, z).is_zero()) continue;
                m(tgt->offset + i * db + y, pt.offset + j * db + z) += ca(i, j) * cb(y, z);
              }
          }
      }
      c.set_conj(k, m);
    }
  }
  return c;
}

DoubleComplex shift(const DoubleComplex& a, int i) {
  DoubleComplex c;
  Bidegree o{i, i};
  for (auto b : a.support()) c.set_dim(b + o, a.dim(b));
  for (const auto& [b, m] : a.d1_map()) c.set_d1(b + o, m);
  for (const auto& [b, m] : a.d2_map()) c.set_d2(b + o, m);
  if (a.has_conj()) {
    c.enable_conj();
    for (const auto& [b, m] : a.conj_map()) c.set_conj(b + o, m);
  }
  return c;
}

DoubleComplex dual_about(const DoubleComplex& a, int n) {
  DoubleComplex c;
  auto refl = [n](Bidegree b) { return Bidegree{n - b.p, n - b.q}; };
  for (auto b : a.support()) c.set_dim(refl(b), a.dim(b));
  // the transpose of d1 at A^{s} lands in DA^{refl(s)+(1,0)}
  for (const auto& [b, m] : a.d1_map()) c.set_d1(refl(b + kE1), m.transpose());
  for (const auto& [b, m] : a.d2_map()) c.set_d2(refl(b + kE2), m.transpose());
  c.n = n;
  if (a.has_conj()) {
    c.enable_conj();
    for (auto b : a.support()) {
      Bidegree t = refl(b);
      c.set_conj(t, a.conj(refl(t.swapped())).adjoint());
    }
  }
  return c;
}

DoubleComplex dual(const DoubleComplex& a) {
  if (!a.n) throw InvalidComplex("dual requires n");
  return dual_about(a, *a.n);
}

DoubleComplex transpose(const DoubleComplex& a) {
  DoubleComplex c;
  for (auto b : a.support()) c.set_dim(b.swapped(), a.dim(b));
  for (const auto& [b, m] : a.d1_map()) c.set_d2(b.swapped(), m);
  for (const auto& [b, m] : a.d2_map()) c.set_d1(b.swapped(), m);
  c.n = a.n;
  if (a.has_conj()) {
    c.enable_conj();
    for (auto b : a.support()) c.set_conj(b.swapped(), a.conj(b));
  }
  return c;
}

DoubleComplex conjugate(const DoubleComplex& a) {
  DoubleComplex c;
  for (auto b : a.support()) c.set_dim(b.swapped(), a.dim(b));
  for (const auto& [b, m] : a.d1_map()) c.set_d2(b.swapped(), m.conj());
  for (const auto& [b, m] : a.d2_map()) c.set_d1(b.swapped(), m.conj());
  c.n = a.n;
  if (a.has_conj()) {
    c.enable_conj();
    for (auto b : a.support()) c.set_conj(b.swapped(), a.conj(b).conj());
  }
  return c;
}

DoubleComplex blowup_model(const DoubleComplex& x, const DoubleComplex& z, int codim) {
  if (codim < 2) throw InvalidComplex("blowup_model requires codim >= 2");
  DoubleComplex c = x;
  for (int i = 1; i <= codim - 1; ++i) c = direct_sum(c, shift(z, i));
  c.n = x.n;
  return c;
}

DoubleComplex change_basis(const DoubleComplex& a, const std::map<Bidegree, Matrix>& p) {
  std::map<Bidegree, Matrix> pinv;
  auto P = [&](Bidegree b) {
    auto it = p.find(b);
    return it == p.end() ? Matrix::identity(a.dim(b)) : it->second;
  };
  auto Pinv = [&](Bidegree b) {
    auto it = pinv.find(b);
    if (it == pinv.end()) it = pinv.emplace(b, inverse(P(b))).first;
    return it->second;
  };
  DoubleComplex c;
  c.n = a.n;
  for (auto b : a.support()) c.set_dim(b, a.dim(b));
  for (auto b : a.support()) {
    c.set_d1(b, Pinv(b + kE1) * a.d1(b) * P(b));
    c.set_d2(b, Pinv(b + kE2) * a.d2(b) * P(b));
  }
  if (a.has_conj()) {
    c.enable_conj();
    for (auto b : a.support()) c.set_conj(b, Pinv(b.swapped()) * a.conj(b) * P(b).conj());
  }
  return c;
}

DoubleComplex scramble(const DoubleComplex& a, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  std::map<Bidegree, Matrix> p;
  for (auto b : a.support()) {
    int n = a.dim(b);
    Matrix l = Matrix::identity(n), u = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        l(i, j) = Scalar(d(rng));
        u(j, i) = Scalar(d(rng), d(rng) % 2);
      }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pm(n, n);
    for (int i = 0; i < n; ++i) pm(i, perm[i]) = 1;
    p[b] = pm * l * u;
  }
  return change_basis(a, p);
}

int TotalDegree::offset_of(Bidegree b) const {
  for (size_t i = 0; i < parts.size(); ++i)
    if (parts[i] == b) return offsets[i];
  return -1;
}

TotalDegree total_degree(const DoubleComplex& a, int k) {
  TotalDegree t;
  t.k = k;
  for (auto b : a.support())
    if (b.total() == k) {
      t.parts.push_back(b);
      t.offsets.push_back(t.dim);
      t.dim += a.dim(b);
    }
  return t;
}

Matrix total_differential(const DoubleComplex& a, int k) {
  TotalDegree s = total_degree(a, k), t = total_degree(a, k + 1);
  Matrix m(t.dim, s.dim);
  for (size_t i = 0; i < s.parts.size(); ++i) {
    Bidegree b = s.parts[i];
    if (int o = t.offset_of(b + kE1); o >= 0) m.set_block(o, s.offsets[i], a.d1(b));
    if (int o = t.offset_of(b + kE2); o >= 0) m.set_block(o, s.offsets[i], a.d2(b));
  }
  return m;
}

}  // namespace bcx
