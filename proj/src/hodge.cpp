#include "bicomplex/hodge.hpp"

#include "bicomplex/cohomology.hpp"
#include "bicomplex/parallel.hpp"

namespace bcx {

namespace {

const Bidegree kE1{1, 0}, kE2{0, 1};

Bidegree step(int k) { return {k, -k}; }
Bidegree neg(Bidegree b) { return {-b.p, -b.q}; }

Matrix get(const std::map<Bidegree, Matrix>& m, Bidegree b, int rows, int cols) {
  auto it = m.find(b);
  return it == m.end() ? Matrix(rows, cols) : it->second;
}

bool is_identity(const Matrix& g) {
  if (g.rows() != g.cols()) return false;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (g(i, j) != Scalar(i == j ? 1 : 0)) return false;
  return true;
}

bool is_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j <= i; ++j)
      if (m(i, j) != m(j, i).conj()) return false;
  return true;
}

std::vector<Bidegree> box_grid(const DoubleComplex& a, int pad) {
  std::vector<Bidegree> out;
  Box bx = a.box();
  if (bx.empty()) return out;
  for (int p = bx.pmin - pad; p <= bx.pmax + pad; ++p)
    for (int q = bx.qmin - pad; q <= bx.qmax + pad; ++q) out.push_back({p, q});
  return out;
}

// builds one matrix per bidegree in parallel
template <class F>
std::map<Bidegree, Matrix> per_bidegree(const std::vector<Bidegree>& grid, F f) {
  std::vector<Matrix> out(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int i) { out[i] = f(grid[i]); });
  std::map<Bidegree, Matrix> m;
  for (size_t i = 0; i < grid.size(); ++i) m.emplace(grid[i], std::move(out[i]));
  return m;
}

bool orthogonal(const Subspace& x, const Subspace& y, const Matrix& g) {
  if (x.is_zero() || y.is_zero()) return true;
  Matrix xb = x.basis(), yb = y.basis();
  Matrix m = is_identity(g) ? xb.adjoint() * yb : xb.adjoint() * g * yb;
  return m.is_zero();
}

std::string at(int r, Bidegree b) { return "r=" + std::to_string(r) + " (" + b.key() + ")"; }

}  // namespace

bool positive_definite(const Matrix& g) {
  if (!is_hermitian(g)) return false;
  // pivots of elimination without exchanges are ratios of leading minors
  Matrix a = g;
  int n = a.rows();
  for (int k = 0; k < n; ++k) {
    const Scalar piv = a(k, k);
    if (!piv.is_real() || sgn(piv.re()) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      Scalar f = a(i, k) / piv;
      for (int j = k; j < n; ++j) a(i, j).sub_mul(f, a(k, j));
    }
  }
  return true;
}

void Metric::set_gram(Bidegree b, Matrix g) {
  if (!positive_definite(g)) throw NotPositiveDefinite("Gram matrix at (" + b.key() + ") is not positive definite");
  if (is_identity(g))
    gram_.erase(b);
  else
    gram_[b] = std::move(g);
}

Matrix Metric::gram(Bidegree b, int dim) const {
  auto it = gram_.find(b);
  if (it == gram_.end()) return Matrix::identity(dim);
  if (it->second.rows() != dim) throw DimensionMismatch("Gram matrix at (" + b.key() + ") has the wrong size");
  return it->second;
}

Scalar Metric::inner(Bidegree b, const Vec& x, const Vec& y) const {
  auto it = gram_.find(b);
  if (it == gram_.end()) return bcx::inner(x, y);
  return bcx::inner(x, it->second.apply(y));
}

Metric metric_from_json(const ojson& j, const DoubleComplex& a) {
  Metric g;
  if (j.contains("orthonormal")) {
    if (!j["orthonormal"].get<bool>()) throw std::invalid_argument("metric: \"orthonormal\": false needs a \"gram\" object");
    return g;
  }
  if (!j.contains("gram") || !j["gram"].is_object())
    throw std::invalid_argument("metric: expected \"orthonormal\" or \"gram\"");
  for (const auto& [k, v] : j["gram"].items()) {
    Bidegree b = parse_key(k);
    g.set_gram(b, matrix_from_json(v, a.dim(b), a.dim(b)));
  }
  return g;
}

ojson metric_to_json(const Metric& g) {
  ojson j;
  if (g.orthonormal()) {
    j["orthonormal"] = true;
    return j;
  }
  j["gram"] = ojson::object();
  for (const auto& [b, m] : g.grams()) j["gram"][b.key()] = matrix_to_json(m);
  return j;
}

Matrix adjoint_of(const Matrix& m, const Matrix& g_src, const Matrix& g_tgt) {
  Matrix h = m.adjoint();
  if (!is_identity(g_tgt)) h = h * g_tgt;
  if (!is_identity(g_src)) h = inverse(g_src) * h;
  return h;
}

Matrix projector(const Subspace& s, const Matrix& g) {
  int n = s.ambient();
  if (s.is_zero()) return Matrix(n, n);
  Matrix b = s.basis();
  Matrix bg = is_identity(g) ? b.adjoint() : b.adjoint() * g;
  return b * inverse(bg * b) * bg;
}

Matrix pseudo_inverse(const Matrix& h, const Matrix& g) {
  Subspace im = image(h);
  if (im.is_zero()) return Matrix(h.cols(), h.rows());
  Matrix b = im.basis();
  Matrix bg = is_identity(g) ? b.adjoint() : b.adjoint() * g;
  return b * inverse(bg * h * b) * bg;
}

Adjoints adjoints(const DoubleComplex& a, const Metric& g) {
  Adjoints out;
  auto grid = box_grid(a, 1);
  auto gm = [&](Bidegree b) { return g.gram(b, a.dim(b)); };
  out.d1s = per_bidegree(grid, [&](Bidegree b) {
    Bidegree s{b.p - 1, b.q};
    return adjoint_of(a.d1(s), gm(s), gm(b));
  });
  out.d2s = per_bidegree(grid, [&](Bidegree b) {
    Bidegree s{b.p, b.q - 1};
    return adjoint_of(a.d2(s), gm(s), gm(b));
  });
  return out;
}

DoubleComplex adjoint_complex(const DoubleComplex& a, const Metric& g) {
  DoubleComplex out;
  for (auto [b, d] : a.dims()) out.set_dim(neg(b), d);
  Adjoints adj = adjoints(a, g);
  for (const auto& [b, m] : adj.d1s)
    if (!m.is_zero()) out.set_d1(neg(b), m);
  for (const auto& [b, m] : adj.d2s)
    if (!m.is_zero()) out.set_d2(neg(b), m);
  return out;
}

HarmonicLadder::HarmonicLadder(const DoubleComplex& a, const Metric& g, int r_max)
    : a_(a), g_(g), adj_(adjoints(a, g)), grid_(box_grid(a, 0)) {
  levels_.push_back(first_level());
  for (int r = 2; r <= r_max; ++r) levels_.push_back(next_level(levels_.back()));
}

LadderLevel HarmonicLadder::first_level() const {
  LadderLevel lv;
  lv.r = 1;
  lv.lap = per_bidegree(grid_, [&](Bidegree b) {
    int n = a_.dim(b);
    Matrix d2s_in = get(adj_.d2s, b, a_.dim(b + Bidegree{0, -1}), n);
    Matrix d2s_out = get(adj_.d2s, b + kE2, n, a_.dim(b + kE2));
    return a_.d2(b + Bidegree{0, -1}) * d2s_in + d2s_out * a_.d2(b);
  });
  for (Bidegree b : grid_) lv.D[b] = Matrix::identity(a_.dim(b));
  finish_level(lv);
  return lv;
}

void HarmonicLadder::finish_level(LadderLevel& lv) const {
  const int r = lv.r;
  std::vector<Subspace> hs(grid_.size());
  parallel_for(static_cast<int>(grid_.size()), [&](int i) { hs[i] = kernel(lv.lap.at(grid_[i])); });
  for (size_t i = 0; i < grid_.size(); ++i) lv.H[grid_[i]] = hs[i];
  lv.P = per_bidegree(grid_, [&](Bidegree b) { return projector(lv.H.at(b), gram(b)); });
  lv.d = per_bidegree(grid_, [&](Bidegree b) {
    Bidegree mid = b + step(r - 1), tgt = b + Bidegree{r, 1 - r};
    Matrix pt = get(lv.P, tgt, a_.dim(tgt), a_.dim(tgt));
    return pt * a_.d1(mid) * lv.D.at(b) * lv.P.at(b);
  });
}

LadderLevel HarmonicLadder::next_level(const LadderLevel& prev) const {
  const int r = prev.r;
  auto D = [&](Bidegree c) { return get(prev.D, c, a_.dim(c + step(r - 1)), a_.dim(c)); };
  auto P = [&](Bidegree c) { return get(prev.P, c, a_.dim(c), a_.dim(c)); };
  LadderLevel lv;
  lv.r = r + 1;
  lv.lap = per_bidegree(grid_, [&](Bidegree b) {
    Bidegree src = b + Bidegree{-r, r - 1}, tgt = b + Bidegree{r, 1 - r};
    // d1 D_{r-1} p_r into b, and p_r d1 D_{r-1} out of b
    Matrix m1 = a_.d1(src + step(r - 1)) * D(src) * P(src);
    Matrix m2 = P(tgt) * a_.d1(b + step(r - 1)) * D(b);
    Matrix lap = prev.lap.at(b);
    if (!m1.is_zero()) lap = lap + m1 * adjoint_of(m1, gram(src), gram(b));
    if (!m2.is_zero()) lap = lap + adjoint_of(m2, gram(b), gram(tgt)) * m2;
    return lap;
  });
  auto pinv = per_bidegree(grid_, [&](Bidegree c) { return pseudo_inverse(prev.lap.at(c), gram(c)); });
  lv.D = per_bidegree(grid_, [&](Bidegree b) {
    Bidegree c = b + step(1);
    int nc = a_.dim(c);
    if (nc == 0 || a_.dim(b) == 0) return Matrix(a_.dim(b + step(r)), a_.dim(b));
    Matrix d2s = get(adj_.d2s, b + kE1, nc, a_.dim(b + kE1));
    return D(c) * pinv.at(c) * d2s * a_.d1(b);
  });
  finish_level(lv);
  return lv;
}

CheckReport check_ladder(const HarmonicLadder& h, SpectralSequence& col) {
  CheckReport rep;
  const DoubleComplex& a = h.complex();
  const Adjoints& adj = h.adj();
  for (int r = 1; r <= h.r_max(); ++r) {
    const LadderLevel& lv = h.level(r);
    const Page& pg = col.page(r);
    for (Bidegree b : h.bidegrees()) {
      const Subspace& H = lv.H.at(b);
      int n = a.dim(b);
      Matrix g = h.metric().gram(b, n);
      if (H.dim() != col.e(r, b))
        rep.fail("dim H " + at(r, b) + " = " + std::to_string(H.dim()) + ", e_r = " + std::to_string(col.e(r, b)));
      if (H != intersect(col.Z(r, b), perp(col.C(r, b), g))) rep.fail("H != Z_r ∩ C_r^perp at " + at(r, b));
      if (!is_hermitian(is_identity(g) ? lv.lap.at(b) : g * lv.lap.at(b)))
        rep.fail("Laplacian not self-adjoint at " + at(r, b));
      // kernel of the Laplacian is the common kernel of its pieces
      Subspace pieces;
      if (r == 1) {
        pieces = intersect(kernel(a.d2(b)), kernel(get(adj.d2s, b, a.dim(b + Bidegree{0, -1}), n)));
      } else {
        const LadderLevel& pv = h.level(r - 1);
        int k = r - 1;
        Bidegree src = b + Bidegree{-k, k - 1};
        Matrix din = get(pv.d, src, n, a.dim(src));
        pieces = intersect(pv.H.at(b), kernel(pv.d.at(b)));
        pieces = intersect(pieces, kernel(adjoint_of(din, h.metric().gram(src, a.dim(src)), g)));
      }
      if (H != pieces) rep.fail("kernel of the Laplacian != common kernel at " + at(r, b));
      // intertwining with the engine's d_r
      Bidegree tgt = col.target(r, b);
      auto dit = pg.d.find(b);
      const Matrix& dw = lv.d.at(b);
      for (const Vec& x : H.rows()) {
        Vec lhs, rhs;
        try {
          Vec cx = col.class_of(r, b, x);
          Vec y = dw.apply(x);
          lhs = a.dim(tgt) ? col.class_of(r, tgt, y) : Vec{};
          rhs = dit == pg.d.end() ? Vec(lhs.size()) : dit->second.apply(cx);
        } catch (const Unsolvable& e) {
          rep.fail(std::string("intertwining at ") + at(r, b) + ": " + e.what());
          continue;
        }
        if (lhs != rhs) {
          rep.fail("d_r^omega differs from d_r at " + at(r, b));
          break;
        }
      }
    }
  }
  return rep;
}

CheckReport three_space_check(const DoubleComplex& a, const Metric& g, int r_max) {
  CheckReport rep;
  HarmonicLadder h(a, g, r_max);
  DoubleComplex adj = adjoint_complex(a, g);
  SpectralSequence col(a, Side::column), cols(adj, Side::column);
  for (int r = 1; r <= r_max; ++r)
    for (Bidegree b : h.bidegrees()) {
      int n = a.dim(b);
      Matrix gm = g.gram(b, n);
      const Subspace& H = h.H(r, b);
      Subspace C = col.C(r, b), Cs = cols.C(r, neg(b));
      Subspace Z = col.Z(r, b), Zs = cols.Z(r, neg(b));
      if (!orthogonal(H, C, gm) || !orthogonal(H, Cs, gm) || !orthogonal(C, Cs, gm))
        rep.fail("summands not orthogonal at " + at(r, b));
      if (H.dim() + C.dim() + Cs.dim() != n || sum(sum(H, C), Cs).dim() != n)
        rep.fail("summands do not fill A at " + at(r, b));
      if (Z != sum(H, C) || H.dim() + C.dim() != Z.dim()) rep.fail("Z_r != H_r + C_r at " + at(r, b));
      if (Zs != sum(H, Cs) || H.dim() + Cs.dim() != Zs.dim()) rep.fail("*Z_r != H_r + *C_r at " + at(r, b));
    }
  return rep;
}

Scalar volume_coefficient(int n) {
  // i^n times the sign reordering (phi_1 conj phi_1)...(phi_n conj phi_n) to the top monomial
  Scalar c(1);
  for (int k = 0; k < n; ++k) c *= Scalar::i();
  if ((n * (n - 1) / 2) % 2) c = -c;
  return c;
}

std::map<Bidegree, Matrix> star(const LieModel& m) {
  const int n = m.n();
  const Scalar vol = volume_coefficient(n);
  std::map<Bidegree, Matrix> out;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      Bidegree b{p, q}, t{n - q, n - p};
      const auto& basis = m.basis(b);
      Matrix s(static_cast<int>(m.basis(t).size()), static_cast<int>(basis.size()));
      for (size_t j = 0; j < basis.size(); ++j) {
        int eps;
        Mask cm = m.conj_mask(basis[j], &eps);
        Mask comp = m.top() ^ cm;
        // cm ∧ *basis[j] = eps vol
        s(m.index(comp), static_cast<int>(j)) = Scalar(eps * wedge_sign(cm, comp)) * vol;
      }
      out[b] = std::move(s);
    }
  return out;
}

std::map<Bidegree, Matrix> sigma(const LieModel& m) {
  auto st = star(m);
  DoubleComplex a = m.complex();
  std::map<Bidegree, Matrix> out;
  for (const auto& [b, s] : st) out[b] = st.at(b.swapped()) * a.conj(b);
  return out;
}

Scalar top_coefficient(const LieModel& m, Bidegree bx, const Vec& x, Bidegree by, const Vec& y) {
  Form w = wedge(m.from_vec(x, bx), m.from_vec(y, by));
  auto it = w.find(m.top());
  return it == w.end() ? Scalar(0) : it->second;
}

Matrix pairing_gram(const LieModel& m, Bidegree bx, const Subspace& x, Bidegree by, const Subspace& y) {
  Matrix g(x.dim(), y.dim());
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < y.dim(); ++j) g(i, j) = top_coefficient(m, bx, x.rows()[i], by, y.rows()[j]);
  return g;
}

Subspace sigma_image(const LieModel& m, Bidegree b, const Subspace& s) {
  Matrix sg = sigma(m).at(b);
  std::vector<Vec> out;
  for (const Vec& v : s.rows()) out.push_back(sg.apply(conj(v)));
  return Subspace::span(out, sg.rows());
}

namespace {

Subspace bc_harmonic_with(const BcAeppli& bc, const BcAeppli& bc_adj, int r, Bidegree b) {
  return intersect(bc.ker_d(b), bc_adj.closed(r, neg(b)));
}

Subspace a_harmonic_with(const BcAeppli& bc, const Adjoints& adj, const DoubleComplex& a, int r, Bidegree b) {
  int n = a.dim(b);
  Subspace k1 = kernel(get(adj.d1s, b, a.dim(b + Bidegree{-1, 0}), n));
  Subspace k2 = kernel(get(adj.d2s, b, a.dim(b + Bidegree{0, -1}), n));
  return intersect(bc.closed(r, b), intersect(k1, k2));
}

}  // namespace

Subspace bc_harmonic(const DoubleComplex& a, const Metric& g, int r, Bidegree b) {
  return bc_harmonic_with(BcAeppli(a), BcAeppli(adjoint_complex(a, g)), r, b);
}

Subspace a_harmonic(const DoubleComplex& a, const Metric& g, int r, Bidegree b) {
  return a_harmonic_with(BcAeppli(a), adjoints(a, g), a, r, b);
}

DualityReport dualities(const LieModel& m, int r_max) {
  DualityReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.failures.push_back(std::move(s));
  };
  const int n = m.n();
  DoubleComplex a = m.complex();
  Metric g;
  HarmonicLadder h(a, g, r_max);
  DoubleComplex adj = adjoint_complex(a, g);
  Adjoints ads = adjoints(a, g);
  BcAeppli bc(a), bc_adj(adj);
  SpectralSequence col(a, Side::column), cols(adj, Side::column);
  auto sg = sigma(m);
  auto image = [&](Bidegree b, const Subspace& s) {
    std::vector<Vec> out;
    for (const Vec& v : s.rows()) out.push_back(sg.at(b).apply(conj(v)));
    return Subspace::span(out, a.dim(Bidegree{n - b.p, n - b.q}));
  };
  auto nonsingular = [&](const Matrix& gm) { return gm.rows() == gm.cols() && rank(gm) == gm.rows(); };
  for (int r = 1; r <= r_max; ++r)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        Bidegree b{p, q}, d{n - p, n - q};
        if (image(b, h.H(r, b)) != h.H(r, d)) fail("sigma(H_r) != H_r at " + at(r, b));
        if (image(b, col.Z(r, b)) != cols.Z(r, neg(d))) fail("sigma(Z_r) != *Z_r at " + at(r, b));
        Matrix e = pairing_gram(m, b, h.H(r, b), d, h.H(r, d));
        if (!nonsingular(e)) fail("E_r pairing singular at " + at(r, b));
        ++rep.gram_checked;
        Subspace hbc = bc_harmonic_with(bc, bc_adj, r, b), ha = a_harmonic_with(bc, ads, a, r, d);
        if (hbc.dim() != bc.h_bc(r, b)) fail("BC harmonic dimension at " + at(r, b));
        if (ha.dim() != bc.h_a(r, d)) fail("A harmonic dimension at " + at(r, d));
        if (image(b, hbc) != ha) fail("sigma(BC harmonic) != A harmonic at " + at(r, b));
        if (!nonsingular(pairing_gram(m, b, hbc, d, ha))) fail("BC x A pairing singular at " + at(r, b));
        ++rep.gram_checked;
      }
  return rep;
}

Form canonical_omega(const LieModel& m) {
  Form w;
  for (int j = 0; j < m.n(); ++j) {
    Mask a = Mask(1) << j, b = Mask(1) << (j + m.n());
    add_to(w, a | b, Scalar::i() * Scalar(wedge_sign(a, b)));
  }
  return w;
}

bool er_sg_test(const LieModel& m, const Form& omega, int r) {
  const int n = m.n();
  for (const auto& [mk, c] : omega)
    if (!c.is_zero() && m.bidegree(mk) != Bidegree{1, 1}) throw std::invalid_argument("omega is not a (1,1)-form");
  Form w{{Mask(0), Scalar(1)}};
  for (int k = 1; k < n; ++k) w = wedge(w, omega);
  Form ddb = m.del(m.dbar(w));
  for (const auto& [mk, c] : ddb)
    if (!c.is_zero()) throw NotGauduchon("del dbar omega^{n-1} != 0");
  Bidegree b{n, n - 1};
  Vec x = m.to_vec(m.del(w), b);
  SpectralSequence col(m.complex(), Side::column);
  return col.C(r, b).contains(x);
}

}  // namespace bcx
