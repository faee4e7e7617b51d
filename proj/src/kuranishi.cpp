#include "bicomplex/kuranishi.hpp"

#include <bit>

#include "bicomplex/spectral.hpp"

namespace bcx {

namespace {

void require_parallelisable(const LieModel& m) {
  if (!m.parallelisable()) throw NotParallelisable("model is not complex parallelisable");
}

Form scaled(const Form& f, const Scalar& s) {
  Form out;
  for (const auto& [k, c] : f) add_to(out, k, s * c);
  return out;
}

Form plus(Form a, const Form& b) {
  for (const auto& [k, c] : b) add_to(a, k, c);
  return a;
}

// rows of z spanning a complement of c inside z
std::vector<Vec> complement(const Subspace& z, const Subspace& c) {
  std::vector<Vec> out;
  Subspace acc = c;
  for (const Vec& v : z.rows()) {
    if (acc.contains(v)) continue;
    out.push_back(v);
    acc = sum(acc, Subspace::span({v}, z.ambient()));
  }
  return out;
}

// coordinates of x in the lifts, modulo c
Vec coords_mod(const std::vector<Vec>& lifts, const Subspace& c, const Vec& x) {
  std::vector<Vec> cols = lifts;
  for (const Vec& v : c.rows()) cols.push_back(v);
  auto sol = solve(Matrix::from_columns(cols, static_cast<int>(x.size())), x);
  if (!sol) throw Unsolvable("vector is not in the span of the lifts and the subspace");
  return Vec(sol->begin(), sol->begin() + static_cast<long>(lifts.size()));
}

}  // namespace

VectorForm VectorForm::term(int n, int i, const Form& f) {
  VectorForm v(n);
  v.comp[i] = f;
  return v;
}

bool VectorForm::is_zero() const {
  for (const auto& f : comp)
    for (const auto& [k, c] : f)
      if (!c.is_zero()) return false;
  return true;
}

VectorForm operator+(const VectorForm& a, const VectorForm& b) {
  VectorForm out(static_cast<int>(std::max(a.comp.size(), b.comp.size())));
  for (size_t i = 0; i < out.comp.size(); ++i) {
    if (i < a.comp.size()) out.comp[i] = a.comp[i];
    if (i < b.comp.size()) out.comp[i] = plus(out.comp[i], b.comp[i]);
  }
  return out;
}

VectorForm operator*(const Scalar& s, const VectorForm& a) {
  VectorForm out(static_cast<int>(a.comp.size()));
  for (size_t i = 0; i < a.comp.size(); ++i) out.comp[i] = scaled(a.comp[i], s);
  return out;
}

VectorForm operator-(const VectorForm& a, const VectorForm& b) { return a + Scalar(-1) * b; }

std::string vector_form_str(const LieModel& m, const VectorForm& v) {
  std::string s;
  for (size_t i = 0; i < v.comp.size(); ++i) {
    if (v.comp[i].empty()) continue;
    if (!s.empty()) s += " + ";
    s += "theta" + std::to_string(i + 1) + "*(" + m.form_str(v.comp[i]) + ")";
  }
  return s.empty() ? "0" : s;
}

Form interior(const LieModel& m, int i, const Form& alpha) {
  Form out;
  Mask bit = Mask(1) << i;
  for (const auto& [k, c] : alpha) {
    if (!(k & bit)) continue;
    int s = std::popcount(k & (bit - 1)) % 2 ? -1 : 1;
    add_to(out, k ^ bit, Scalar(s) * c);
  }
  (void)m;
  return out;
}

Form contract(const LieModel& m, const VectorForm& psi, const Form& alpha) {
  Form out;
  for (size_t i = 0; i < psi.comp.size(); ++i) {
    if (psi.comp[i].empty()) continue;
    out = plus(out, wedge(psi.comp[i], interior(m, static_cast<int>(i), alpha)));
  }
  return out;
}

VectorForm bracket(const LieModel& m, const VectorForm& psi, const VectorForm& rho) {
  require_parallelisable(m);
  const int n = m.n();
  VectorForm out(n);
  for (size_t i = 0; i < psi.comp.size(); ++i)
    for (size_t j = 0; j < rho.comp.size(); ++j) {
      if (psi.comp[i].empty() || rho.comp[j].empty()) continue;
      Form w = wedge(psi.comp[i], rho.comp[j]);
      if (w.empty()) continue;
      for (int k = 0; k < n; ++k) {
        Scalar c = m.bracket_constant(static_cast<int>(i), static_cast<int>(j), k);
        if (!c.is_zero()) out.comp[k] = plus(out.comp[k], scaled(w, c));
      }
    }
  return out;
}

VectorForm dbar(const LieModel& m, const VectorForm& psi) {
  require_parallelisable(m);
  VectorForm out(static_cast<int>(psi.comp.size()));
  for (size_t i = 0; i < psi.comp.size(); ++i) out.comp[i] = m.dbar(psi.comp[i]);
  return out;
}

Form holomorphic_volume(const LieModel& m) { return Form{{m.phi_top(), Scalar(1)}}; }

VectorForm calabi_yau_inverse(const LieModel& m, const Form& eta, int q) {
  const int n = m.n();
  const Form u = holomorphic_volume(m);
  const Bidegree src{0, q}, tgt{n - 1, q};
  const auto& basis = m.basis(src);
  std::vector<Vec> cols;
  for (int i = 0; i < n; ++i)
    for (Mask b : basis) cols.push_back(m.to_vec(contract(m, VectorForm::term(n, i, Form{{b, Scalar(1)}}), u), tgt));
  Matrix M = Matrix::from_columns(cols, static_cast<int>(m.basis(tgt).size()));
  auto x = solve(M, m.to_vec(eta, tgt));
  if (!x) throw Unsolvable("form is not a contraction of u");
  VectorForm out(n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (Mask b : basis) add_to(out.comp[i], b, (*x)[k++]);
  return out;
}

TangentCohomology tangent_cohomology(const LieModel& m) {
  require_parallelisable(m);
  const int n = m.n();
  DoubleComplex a = m.complex();
  TangentCohomology tc;
  tc.h01 = kernel(a.d2({0, 1}));
  const auto& b01 = m.basis({0, 1});
  for (int i = 0; i < n; ++i)
    for (const Vec& v : tc.h01.rows()) {
      tc.basis.push_back(VectorForm::term(n, i, m.from_vec(v, {0, 1})));
      std::string lab = "theta_" + std::to_string(i + 1) + "*";
      int nz = 0, at = -1;
      for (size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) ++nz, at = static_cast<int>(k);
      if (nz == 1 && v[at].is_one())
        lab += "conj(" + m.gen_name() + "_" + std::to_string(std::countr_zero(b01[at]) - n + 1) + ")";
      else
        lab += "(" + m.form_str(m.from_vec(v, {0, 1})) + ")";
      tc.labels.push_back(lab);
    }
  for (const Vec& z : m.centre())
    for (const Vec& v : tc.h01.rows()) {
      VectorForm p(n);
      for (int i = 0; i < n; ++i)
        if (!z[i].is_zero()) p.comp[i] = scaled(m.from_vec(v, {0, 1}), z[i]);
      tc.parallel.push_back(p);
    }
  return tc;
}

VectorForm d_closed_representative(const LieModel& m, const VectorForm& psi, const Metric& g) {
  require_parallelisable(m);
  const int n = m.n();
  const Bidegree b{n - 1, 1}, b0{n - 1, 0};
  DoubleComplex a = m.complex();
  Vec eta = m.to_vec(contract(m, psi, holomorphic_volume(m)), b);
  if (!is_zero(a.d2(b).apply(eta))) throw std::invalid_argument("direction is not dbar-closed");
  Matrix del = a.d1(b), db = a.d2(b0);
  auto beta = solve(del * db, Scalar(-1) * del.apply(eta));
  if (!beta) throw Unsolvable("class has no d-closed representative");
  Vec x = eta + db.apply(*beta);
  // remove the component along the d-closed dbar-exact forms
  Subspace w = intersect(image(db), kernel(del));
  x = x - projector(w, g.gram(b, a.dim(b))).apply(x);
  return calabi_yau_inverse(m, m.from_vec(x, b), 1);
}

bool MembershipReport::ok() const {
  for (const auto& c : cases)
    if (c.members != c.pairs) return false;
  return true;
}

MembershipReport appendix2_membership(const LieModel& m) {
  require_parallelisable(m);
  const int n = m.n();
  if (n < 2) throw std::invalid_argument("membership check needs n >= 2");
  DoubleComplex a = m.complex();
  const Form u = holomorphic_volume(m);
  const Bidegree b{n - 1, 1}, c{n - 2, 2};
  Subspace closed = intersect(kernel(a.d1(b)), kernel(a.d2(b)));
  Subspace full_exact = image(a.d1({n - 2, 1}));
  // deformation directions are dbar-closed, so the exact ones are taken in ker dbar
  Subspace exact = intersect(full_exact, kernel(a.d2(b)));
  auto dirs = [&](const Subspace& s) {
    std::vector<VectorForm> out;
    for (const Vec& v : s.rows()) out.push_back(calabi_yau_inverse(m, m.from_vec(v, b), 1));
    return out;
  };
  std::vector<VectorForm> cl = dirs(closed), ex = dirs(exact), fx = dirs(full_exact);
  Subspace z2 = tower_subspace(a, TowerSpec{Side::column, TowerSpec::Zr, 2, c});
  Subspace im_ddbar = image(a.d1({n - 2, 2}) * a.d2({n - 2, 1}));
  Subspace im_dbar = image(a.d2({n - 1, 1}));
  auto run = [&](const std::string& name, const std::vector<VectorForm>& xs, const std::vector<VectorForm>& ys) {
    MembershipCase mc;
    mc.name = name;
    for (const auto& psi : xs)
      for (const auto& rho : ys) {
        Form x = contract(m, psi, contract(m, rho, u));
        Vec v = m.to_vec(x, c);
        Vec dv = m.to_vec(m.del(x), {n - 1, 2});
        ++mc.pairs;
        if (z2.contains(v)) ++mc.members;
        if (is_zero(v)) ++mc.zero;
        if (im_ddbar.contains(dv)) ++mc.del_in_im_ddbar;
        if (im_dbar.contains(dv)) ++mc.del_in_im_dbar;
      }
    return mc;
  };
  MembershipReport rep;
  rep.closed_dim = closed.dim();
  rep.exact_dim = exact.dim();
  rep.full_exact_dim = full_exact.dim();
  rep.cases = {run("closed x closed", cl, cl), run("closed x exact", cl, ex), run("exact x closed", ex, cl),
               run("exact x exact", ex, ex)};
  rep.full_cases = {run("closed x exact", cl, fx), run("exact x closed", fx, cl), run("exact x exact", fx, fx)};
  return rep;
}

Subspace e1_classes(const LieModel& m, const std::vector<Form>& forms) {
  const int n = m.n();
  const Bidegree b{n - 1, 1};
  SpectralSequence col(m.complex(), Side::column);
  std::vector<Vec> out;
  for (const Form& f : forms) out.push_back(col.class_of(1, b, m.to_vec(f, b)));
  return Subspace::span(out, col.e(1, b));
}

EssentialReport essential_spaces(const LieModel& m, const Metric& g) {
  const int n = m.n();
  const Bidegree b{n - 1, 1};
  DoubleComplex a = m.complex();
  SpectralSequence col(a, Side::column);
  EssentialReport rep;
  Subspace z1 = col.Z(1, b), z2 = col.Z(2, b), c1 = col.C(1, b);
  rep.e1 = col.e(1, b);
  rep.e2 = col.e(2, b);
  rep.z_equality = z1 == z2;
  std::vector<Vec> lifts = complement(z2, c1);
  rep.e1_zero = static_cast<int>(lifts.size());

  rep.P = Matrix(rep.e2, rep.e1_zero);
  for (int k = 0; k < rep.e1_zero; ++k) {
    Vec cls = col.class_of(2, b, lifts[k]);
    for (int i = 0; i < rep.e2; ++i) rep.P(i, k) = cls[i];
  }

  // harmonic representatives of the page-2 lift classes
  HarmonicLadder h(a, g, 2);
  const Subspace& h2 = h.H(2, b);
  std::vector<Vec> cls;
  for (const Vec& v : h2.rows()) cls.push_back(col.class_of(2, b, v));
  Matrix K = Matrix::from_columns(cls, rep.e2);
  Matrix Kinv = inverse(K);
  Matrix H = h2.basis() * Kinv;
  rep.J = Matrix(rep.e1_zero, rep.e2);
  std::vector<Vec> e1c;
  for (int k = 0; k < rep.e2; ++k) {
    Vec hk = H.col(k);
    rep.essential.push_back(hk);
    Vec c = coords_mod(lifts, c1, hk);
    for (int i = 0; i < rep.e1_zero; ++i) rep.J(i, k) = c[i];
    e1c.push_back(col.class_of(1, b, hk));
  }
  rep.PJ_identity = rep.P * rep.J == Matrix::identity(rep.e2);
  rep.essential_e1 = Subspace::span(e1c, rep.e1);

  if (m.parallelisable()) {
    TangentCohomology tc = tangent_cohomology(m);
    std::vector<Form> forms;
    for (const auto& p : tc.parallel) forms.push_back(contract(m, p, holomorphic_volume(m)));
    rep.parallel_e1 = e1_classes(m, forms);
  } else {
    rep.parallel_e1 = Subspace(rep.e1);
  }
  return rep;
}

DeformationSeries run_kuranishi(const LieModel& m, const Vec& t, int N, const Metric& g) {
  TangentCohomology tc = tangent_cohomology(m);
  if (static_cast<int>(t.size()) != tc.dim())
    throw std::invalid_argument("direction has " + std::to_string(t.size()) + " coordinates, tangent space has " +
                                std::to_string(tc.dim()));
  const int n = m.n();
  DoubleComplex a = m.complex();
  const Form u = holomorphic_volume(m);
  const Bidegree src{n - 2, 1}, b{n - 1, 1}, tgt{n - 1, 2};
  DeformationSeries out;
  out.t = t;
  VectorForm psi1(n);
  for (int k = 0; k < tc.dim(); ++k) psi1 = psi1 + t[k] * tc.basis[k];
  out.psi.push_back(d_closed_representative(m, psi1, g));

  const Matrix del = a.d1(src), M = a.d2(b) * del;  // dbar del on (n-2,1)
  const Subspace ker = kernel(M), im_del = image(del);
  const Matrix pk = projector(ker, g.gram(src, a.dim(src)));
  for (int nu = 2; nu <= N; ++nu) {
    VectorForm s(n);
    for (int mu = 1; mu <= nu - 1; ++mu) s = s + bracket(m, out.psi[mu - 1], out.psi[nu - mu - 1]);
    s = Scalar::frac(1, 2) * s;
    Vec rhs = m.to_vec(contract(m, s, u), tgt);
    auto phi0 = solve(M, rhs);
    if (!phi0) throw Obstructed(nu);
    Vec phi = *phi0 - pk.apply(*phi0);  // least norm: orthogonal to ker
    Vec eta = del.apply(phi);
    VectorForm psi = calabi_yau_inverse(m, m.from_vec(eta, b), 1);
    out.psi.push_back(psi);
    out.residual_zero.push_back((dbar(m, psi) - s).is_zero());
    out.im_del.push_back(im_del.contains(m.to_vec(contract(m, psi, u), b)));
  }
  return out;
}

}  // namespace bcx
