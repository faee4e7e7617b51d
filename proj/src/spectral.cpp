#include "bicomplex/spectral.hpp"

#include <algorithm>

#include "bicomplex/parallel.hpp"

namespace bcx {

namespace {

const Subspace kEmpty(0);

Bidegree scale(Bidegree b, int k) { return {b.p * k, b.q * k}; }
Bidegree neg(Bidegree b) { return {-b.p, -b.q}; }

}  // namespace

std::string side_name(Side s) { return s == Side::column ? "column" : "row"; }

Side parse_side(const std::string& s) {
  if (s == "column" || s == "col") return Side::column;
  if (s == "row") return Side::row;
  throw std::invalid_argument("unknown side '" + s + "'");
}

SpectralSequence::SpectralSequence(const DoubleComplex& a, Side side, bool self_check)
    : a_(a), side_(side), self_check_(self_check) {
  Box bx = a_.box();
  r_max_ = std::max(1, bx.width() + bx.height());
  for (int p = bx.pmin; p <= bx.pmax; ++p)
    for (int q = bx.qmin; q <= bx.qmax; ++q) grid_.push_back({p, q});
  build_towers();
}

Matrix SpectralSequence::first(Bidegree b) const { return side_ == Side::column ? a_.d2(b) : a_.d1(b); }
Matrix SpectralSequence::second(Bidegree b) const { return side_ == Side::column ? a_.d1(b) : a_.d2(b); }
Bidegree SpectralSequence::first_step() const { return side_ == Side::column ? Bidegree{0, 1} : Bidegree{1, 0}; }
Bidegree SpectralSequence::second_step() const { return side_ == Side::column ? Bidegree{1, 0} : Bidegree{0, 1}; }

Bidegree SpectralSequence::target(int r, Bidegree b) const {
  return b + scale(chain_step(), r - 1) + second_step();
}

void SpectralSequence::build_towers() {
  const int n = static_cast<int>(grid_.size());
  runs_.resize(r_max_ + 1);
  reach_.resize(r_max_ + 1);
  for (Bidegree b : grid_) {
    runs_[0][b] = Subspace::full(a_.dim(b));
    reach_[0][b] = zero_at(b);
  }
  bool runs_stable = false, reach_stable = false;
  for (int j = 1; j <= r_max_; ++j) {
    if (runs_stable) runs_[j] = runs_[j - 1];
    if (reach_stable) reach_[j] = reach_[j - 1];
    if (runs_stable && reach_stable) continue;
    std::vector<Subspace> nr(n), ne(n);
    parallel_for(n, [&](int i) {
      Bidegree b = grid_[i];
      if (!runs_stable) {
        // second(alpha) = first(u) with u in runs(j-1) one chain step further
        Bidegree c = b + chain_step();
        Subspace img = image_of(first(c), runs(j - 1, c));
        nr[i] = preimage(second(b), img);
      }
      if (!reach_stable) {
        // first(zeta) = second(v) with v in reach(j-1) one chain step back
        Bidegree c = b + neg(chain_step());
        Subspace img = image_of(second(c), reach(j - 1, c));
        ne[i] = preimage(first(b), img);
      }
    });
    bool same_runs = true, same_reach = true;
    for (int i = 0; i < n; ++i) {
      Bidegree b = grid_[i];
      if (!runs_stable) {
        if (!(nr[i] == runs_[j - 1][b])) same_runs = false;
        runs_[j][b] = std::move(nr[i]);
      }
      if (!reach_stable) {
        if (!(ne[i] == reach_[j - 1][b])) same_reach = false;
        reach_[j][b] = std::move(ne[i]);
      }
    }
    runs_stable = runs_stable || same_runs;
    reach_stable = reach_stable || same_reach;
    if (runs_stable && reach_stable && stable_ > r_max_) stable_ = j;
  }
}

const Subspace& SpectralSequence::runs(int j, Bidegree b) const {
  if (j < 0) throw std::invalid_argument("negative tower length");
  j = std::min(j, r_max_);
  auto it = runs_[j].find(b);
  return it == runs_[j].end() ? kEmpty : it->second;
}

const Subspace& SpectralSequence::reach(int j, Bidegree b) const {
  if (j < 0) throw std::invalid_argument("negative tower length");
  j = std::min(j, r_max_);
  auto it = reach_[j].find(b);
  return it == reach_[j].end() ? kEmpty : it->second;
}

Subspace SpectralSequence::Z(int r, Bidegree b) const {
  if (r < 1) throw std::invalid_argument("page index must be at least 1");
  if (a_.dim(b) == 0) return zero_at(b);
  return intersect(kernel(first(b)), runs(r - 1, b));
}

Subspace SpectralSequence::C(int r, Bidegree b) const {
  if (r < 1) throw std::invalid_argument("page index must be at least 1");
  if (a_.dim(b) == 0) return zero_at(b);
  Bidegree f = b + neg(first_step()), s = b + neg(second_step());
  return sum(image(first(f)), image_of(second(s), reach(r - 1, s)));
}

const PageEntry& SpectralSequence::entry(int r, Bidegree b) {
  static const PageEntry empty;
  const Page& pg = page(r);
  auto it = pg.entries.find(b);
  return it == pg.entries.end() ? empty : it->second;
}

const Page& SpectralSequence::page(int r) {
  if (r < 1) throw std::invalid_argument("page index must be at least 1");
  r = std::min(r, r_max_ + 1);
  auto it = pages_.find(r);
  if (it != pages_.end()) return *it->second;
  if (r > stable_) {
    // towers are constant from here on, so E_r = E_stable and every d vanishes
    auto pg = std::make_unique<Page>(page(stable_));
    pg->r = r;
    pg->d.clear();
    return *pages_.emplace(r, std::move(pg)).first->second;
  }

  auto pg = std::make_unique<Page>();
  pg->r = r;
  const int n = static_cast<int>(grid_.size());
  std::vector<PageEntry> ents(n);
  parallel_for(n, [&](int i) {
    Bidegree b = grid_[i];
    PageEntry& e = ents[i];
    e.Z = Z(r, b);
    e.C = C(r, b);
    // representatives reduced against the pivots of C_r are canonical
    std::vector<Vec> red;
    for (const Vec& z : e.Z.rows()) red.push_back(e.C.reduce(z));
    e.lifts = Subspace::span(red, a_.dim(b));
  });
  for (int i = 0; i < n; ++i) pg->entries[grid_[i]] = std::move(ents[i]);

  std::vector<Matrix> ds(n);
  std::vector<char> has(n, 0);
  parallel_for(n, [&](int i) {
    Bidegree b = grid_[i], t = target(r, b);
    const PageEntry& src = pg->entries[b];
    auto tt = pg->entries.find(t);
    if (src.dim() == 0 || tt == pg->entries.end() || tt->second.dim() == 0) return;
    const PageEntry& dst = tt->second;
    Matrix m(dst.dim(), src.dim());
    for (int c = 0; c < src.dim(); ++c) {
      Vec y = d_raw(r, b, src.lifts.rows()[c]);
      Vec k = dst.lifts.coords(dst.C.reduce(y));
      for (int rr = 0; rr < dst.dim(); ++rr) m(rr, c) = k[rr];
    }
    ds[i] = std::move(m);
    has[i] = 1;
  });
  for (int i = 0; i < n; ++i)
    if (has[i]) pg->d[grid_[i]] = std::move(ds[i]);

  if (self_check_) check_page(*pg);
  return *pages_.emplace(r, std::move(pg)).first->second;
}

void SpectralSequence::check_page(const Page& pg) {
  const int r = pg.r;
  for (const auto& [b, e] : pg.entries) {
    std::string where = side_name(side_) + " page " + std::to_string(r) + " at (" + b.key() + ")";
    if (!e.Z.contains(e.C)) throw SelfCheckFailed("C_r not inside Z_r, " + where);
    if (r <= r_max_) {
      Subspace z1 = Z(r + 1, b), c1 = C(r + 1, b);
      if (!e.Z.contains(z1) || !z1.contains(c1) || !c1.contains(e.C))
        throw SelfCheckFailed("tower inclusions fail, " + where);
    }
    Bidegree t = target(r, b);
    auto tt = pg.entries.find(t);
    if (tt == pg.entries.end()) continue;
    const PageEntry& dst = tt->second;
    // d_r of an exact form is exact at the target
    for (const Vec& c : e.C.rows()) {
      Vec y = d_raw(r, b, c);
      if (!dst.Z.contains(y) || !dst.C.contains(y)) throw SelfCheckFailed("d_r does not kill C_r, " + where);
    }
    // a second witness chain gives the same class
    for (const Vec& l : e.lifts.rows()) {
      Vec y1 = d_raw(r, b, l, true), y2 = d_raw(r, b, l, false);
      if (!dst.Z.contains(y1) || !dst.C.contains(y1 - y2))
        throw SelfCheckFailed("d_r depends on the witness, " + where);
    }
  }
}

std::vector<Vec> SpectralSequence::witness(int r, Bidegree b, const Vec& alpha, bool least_norm) const {
  std::vector<Vec> us;
  if (!is_zero(first(b).apply(alpha))) throw Unsolvable("form is not closed for the first differential");
  Vec prev = alpha;
  Bidegree pb = b;
  for (int i = 1; i <= r - 1; ++i) {
    Bidegree bi = b + scale(chain_step(), i);
    const Subspace& s = runs(r - 1 - i, bi);
    Matrix basis = s.basis();
    Matrix m = first(bi) * basis;
    Vec rhs = second(pb).apply(prev);
    Vec c;
    if (least_norm) {
      c = least_norm_solve(m, rhs);
    } else {
      auto sol = solve(m, rhs);
      if (!sol) throw Unsolvable("tower has no solution");
      c = *sol;
    }
    prev = basis.apply(c);
    if (prev.empty()) prev = Vec(a_.dim(bi));
    us.push_back(prev);
    pb = bi;
  }
  return us;
}

Vec SpectralSequence::d_raw(int r, Bidegree b, const Vec& alpha, bool least_norm) const {
  auto us = witness(r, b, alpha, least_norm);
  const Vec& last = us.empty() ? alpha : us.back();
  Bidegree lb = b + scale(chain_step(), r - 1);
  return second(lb).apply(last);
}

Vec SpectralSequence::class_of(int r, Bidegree b, const Vec& z) {
  const PageEntry& e = entry(r, b);
  if (!e.Z.contains(z)) throw Unsolvable("form is not E_r-closed at (" + b.key() + ")");
  return e.lifts.coords(e.C.reduce(z));
}

bool SpectralSequence::d_zero(int r) {
  for (const auto& [b, m] : page(r).d)
    if (!m.is_zero()) return false;
  return true;
}

std::vector<std::pair<Bidegree, Bidegree>> SpectralSequence::d_nonzero(int r) {
  std::vector<std::pair<Bidegree, Bidegree>> out;
  for (const auto& [b, m] : page(r).d)
    if (!m.is_zero()) out.push_back({b, target(r, b)});
  return out;
}

int SpectralSequence::degeneration() {
  int deg = 1;
  for (int r = 1; r <= r_max_; ++r)
    if (!d_zero(r)) deg = r + 1;
  return deg;
}

Subspace tower_subspace(const DoubleComplex& a, const TowerSpec& spec) {
  if (spec.r < 1) throw std::invalid_argument("page index must be at least 1");
  const bool col = spec.side == Side::column;
  auto first = [&](Bidegree b) { return col ? a.d2(b) : a.d1(b); };
  auto second = [&](Bidegree b) { return col ? a.d1(b) : a.d2(b); };
  const Bidegree fs = col ? Bidegree{0, 1} : Bidegree{1, 0};
  const Bidegree ss = col ? Bidegree{1, 0} : Bidegree{0, 1};
  const Bidegree ch = ss + neg(fs);
  const int r = spec.r;
  const Bidegree b = spec.at;

  if (spec.kind == TowerSpec::Zr) {
    // unknowns alpha, u_1..u_{r-1}; rows: first(alpha), second(u_{i-1}) - first(u_i), first... none after
    std::vector<Bidegree> blocks;
    for (int i = 0; i < r; ++i) blocks.push_back(b + scale(ch, i));
    std::vector<int> off;
    int cols = 0;
    for (auto x : blocks) {
      off.push_back(cols);
      cols += a.dim(x);
    }
    std::vector<Matrix> eqs;
    {
      Matrix m(a.dim(b + fs), cols);
      m.set_block(0, 0, first(b));
      eqs.push_back(m);
    }
    for (int i = 1; i < r; ++i) {
      Bidegree t = blocks[i - 1] + ss;
      Matrix m(a.dim(t), cols);
      m.set_block(0, off[i - 1], second(blocks[i - 1]));
      m.set_block(0, off[i], -first(blocks[i]));
      eqs.push_back(m);
    }
    Matrix sys(0, cols);
    for (auto& m : eqs) sys = vstack(sys, m);
    Subspace sol = kernel(sys);
    std::vector<Vec> proj;
    for (const Vec& v : sol.rows()) proj.emplace_back(v.begin(), v.begin() + a.dim(b));
    return Subspace::span(proj, a.dim(b));
  }

  // C_r: alpha = first(xi) + second(zeta); zeta = v_{r-2}, first(v_j) = second(v_{j-1}), first(v_0) = 0
  if (r == 1) return image(first(b + neg(fs)));
  std::vector<Bidegree> vs;  // zeta first, then descending
  for (int i = 0; i < r - 1; ++i) vs.push_back(b + neg(ss) + scale(neg(ch), i));
  Bidegree xb = b + neg(fs);
  std::vector<int> off;
  int cols = a.dim(xb);
  for (auto x : vs) {
    off.push_back(cols);
    cols += a.dim(x);
  }
  Matrix sys(0, cols);
  for (size_t i = 0; i < vs.size(); ++i) {
    Bidegree t = vs[i] + fs;
    Matrix m(a.dim(t), cols);
    m.set_block(0, off[i], first(vs[i]));
    if (i + 1 < vs.size()) m.set_block(0, off[i + 1], -second(vs[i + 1]));
    sys = vstack(sys, m);
  }
  Subspace sol = kernel(sys);
  Matrix out(a.dim(b), cols);
  out.set_block(0, 0, first(xb));
  out.set_block(0, off[0], second(vs[0]));
  return image_of(out, sol);
}

Subspace cocycles(const DoubleComplex& a, int k) { return kernel(total_differential(a, k)); }

Subspace coboundaries(const DoubleComplex& a, int k) { return image(total_differential(a, k - 1)); }

Subspace filtered_cocycles(const DoubleComplex& a, Side side, int p, int k) {
  TotalDegree t = total_degree(a, k);
  Matrix d = total_differential(a, k);
  std::vector<Vec> sel;
  for (size_t i = 0; i < t.parts.size(); ++i) {
    int level = side == Side::column ? t.parts[i].p : t.parts[i].q;
    if (level >= p) continue;
    for (int j = 0; j < a.dim(t.parts[i]); ++j) sel.push_back(unit(t.dim, t.offsets[i] + j));
  }
  return kernel(vstack(d, Matrix::from_rows(sel, t.dim)));
}

int filtration_dim(const DoubleComplex& a, Side side, int p, int k) {
  Subspace bnd = coboundaries(a, k);
  return sum(filtered_cocycles(a, side, p, k), bnd).dim() - bnd.dim();
}

FiltrationCheck infinity_vs_filtration(const DoubleComplex& a) {
  FiltrationCheck out;
  Box bx = a.box();
  if (bx.empty()) return out;
  for (Side side : {Side::column, Side::row}) {
    SpectralSequence ss(a, side);
    int rinf = ss.r_max() + 1;
    for (int k = a.min_total_degree(); k <= a.max_total_degree(); ++k) {
      int lo = side == Side::column ? bx.pmin : bx.qmin;
      int hi = side == Side::column ? bx.pmax : bx.qmax;
      for (int p = lo; p <= hi; ++p) {
        Bidegree b = side == Side::column ? Bidegree{p, k - p} : Bidegree{k - p, p};
        int graded = filtration_dim(a, side, p, k) - filtration_dim(a, side, p + 1, k);
        int einf = ss.e(rinf, b);
        if (graded != einf)
          out.mismatches.push_back(side_name(side) + " (" + b.key() + "): E_inf " + std::to_string(einf) +
                                   " vs graded " + std::to_string(graded));
      }
    }
  }
  out.ok = out.mismatches.empty();
  return out;
}

}  // namespace bcx
