#include "bicomplex/verdict.hpp"

#include <algorithm>
#include <memory>

#include "bicomplex/kuranishi.hpp"
#include "bicomplex/zigzag.hpp"

namespace bcx {

namespace {

constexpr Bidegree kE1{1, 0}, kE2{0, 1};
Bidegree minus(Bidegree b, Bidegree s) { return {b.p - s.p, b.q - s.q}; }

// rows of s (a subspace of A^b) placed into total degree coordinates
std::vector<Vec> embed(const Subspace& s, const TotalDegree& td, Bidegree b) {
  std::vector<Vec> out;
  int off = td.offset_of(b);
  for (const Vec& v : s.rows()) {
    Vec w(td.dim, Scalar(0));
    std::copy(v.begin(), v.end(), w.begin() + off);
    out.push_back(std::move(w));
  }
  return out;
}

Subspace pure_part(const Subspace& s, const TotalDegree& td, Bidegree b, int dim) {
  if (dim == 0) return Subspace(0);
  int off = td.offset_of(b);
  std::vector<Vec> units;
  for (int i = 0; i < dim; ++i) units.push_back(unit(td.dim, off + i));
  Subspace inside = intersect(s, Subspace::span(units, td.dim));
  std::vector<Vec> out;
  for (const Vec& v : inside.rows()) out.emplace_back(v.begin() + off, v.begin() + off + dim);
  return Subspace::span(out, dim);
}

// everything the sub-verdicts share across r
struct Context {
  DoubleComplex a;
  BcAeppli bc;
  DeRhamData dr;
  MultiplicityTable zz;
  std::map<int, Subspace> boundaries;
  std::map<Bidegree, Subspace> kerd, dexact;
  // (B) and (E) alone accept odd zigzags of type M; a manifold rules those out
  // by duality, here both are also run on the dual complex
  std::unique_ptr<Context> dual;

  explicit Context(const DoubleComplex& x, bool with_dual = true) : a(x), bc(x) {
    require_valid(a);
    if (with_dual) {
      dr = de_rham(a);
      zz = decompose(a, bc.col(), bc.row(), dr);
    }
    for (int k = a.min_total_degree(); k <= a.max_total_degree(); ++k) boundaries[k] = coboundaries(a, k);
    for (Bidegree b : a.support()) {
      kerd[b] = bc.ker_d(b);
      dexact[b] = pure_part(boundaries[b.total()], total_degree(a, b.total()), b, a.dim(b));
    }
    if (with_dual) dual = std::make_unique<Context>(dual_about(a, 0), false);
  }
  std::vector<Bidegree> in_degree(int k) const {
    std::vector<Bidegree> out;
    for (Bidegree b : a.support())
      if (b.total() == k) out.push_back(b);
    return out;
  }
};

std::string at(Bidegree b) { return "(" + b.key() + ")"; }

// identity induces E_R ≅ H^k for every k, on one side
bool hodge_decomposition(Context& c, SpectralSequence& s, int R, std::string& why) {
  const std::string side = side_name(s.side());
  for (int k = c.a.min_total_degree(); k <= c.a.max_total_degree(); ++k) {
    TotalDegree td = total_degree(c.a, k);
    std::vector<Vec> kd, w;
    int esum = 0;
    for (Bidegree b : c.in_degree(k)) {
      const Subspace& kdb = c.kerd.at(b);
      Subspace C = s.C(R, b);
      if (!sum(C, kdb).contains(s.Z(R, b))) {
        why = "char1: " + side + " class at " + at(b) + " has no d-closed representative";
        return false;
      }
      auto e1 = embed(kdb, td, b), e2 = embed(intersect(C, kdb), td, b);
      kd.insert(kd.end(), e1.begin(), e1.end());
      w.insert(w.end(), e2.begin(), e2.end());
      esum += s.e(R, b);
    }
    Subspace K = intersect(Subspace::span(kd, td.dim), c.boundaries.at(k));
    Subspace W = Subspace::span(w, td.dim);
    if (!K.contains(W)) {
      why = "char1: " + side + " map in degree " + std::to_string(k) + " is not well defined";
      return false;
    }
    if (!W.contains(K)) {
      why = "char1: " + side + " map in degree " + std::to_string(k) + " is not injective";
      return false;
    }
    int bk = c.dr.betti.count(k) ? c.dr.betti.at(k) : 0;
    if (esum != bk) {
      why = "char1: " + side + " map in degree " + std::to_string(k) + " is not surjective";
      return false;
    }
  }
  return true;
}

// ker d ∩ C_R = ker d ∩ Cbar_R = ker d ∩ D_R = ker d ∩ Im d at every bidegree
bool exactness_equivalence(Context& c, int R, std::string& why) {
  for (Bidegree b : c.a.support()) {
    const Subspace& kd = c.kerd.at(b);
    Subspace im = intersect(kd, c.dexact.at(b));
    Subspace e = intersect(kd, c.bc.col().C(R, b));
    Subspace eb = intersect(kd, c.bc.row().C(R, b));
    Subspace dd = intersect(kd, c.bc.exact(R, b));
    if (!(im == e && e == eb && eb == dd)) {
      why = "exactness notions differ at " + at(b);
      return false;
    }
  }
  return true;
}

// S_R T_R : E_{R,BC} -> E_{R,A} injective at every bidegree
bool composite_injective(Context& c, int R, std::string& why) {
  for (Bidegree b : c.a.support()) {
    int hbc = c.bc.h_bc(R, b);
    if (hbc == 0) continue;
    MapReport T = c.bc.T(R, b), S = c.bc.S(R, b);
    if (S.m.cols() == 0 || rank(S.m * T.m) != hbc) {
      why = "S T is not injective at " + at(b);
      return false;
    }
  }
  return true;
}

Verdict characterize_ctx(Context& c, int r, bool strict) {
  if (r < 0) throw std::invalid_argument("r must be non-negative");
  const int R = r + 1;
  Verdict v;
  v.r = r;
  std::string why;

  v.char1 = hodge_decomposition(c, c.bc.col(), R, why) && hodge_decomposition(c, c.bc.row(), R, why);
  if (!v.char1) v.reasons.push_back(why);

  bool deg = c.bc.col().degeneration() <= R && c.bc.row().degeneration() <= R;
  v.char2 = deg && c.dr.is_pure();
  if (!deg) v.reasons.push_back("char2: no degeneration at E_" + std::to_string(R));
  else if (!v.char2) v.reasons.push_back("char2: De Rham cohomology is not pure");

  v.char3 = exactness_equivalence(c, R, why);
  if (!v.char3) v.reasons.push_back("char3: " + why);
  else if (!exactness_equivalence(*c.dual, R, why)) {
    v.char3 = false;
    v.reasons.push_back("char3: on the dual complex, " + why);
  }

  v.char4 = true;
  for (Bidegree b : c.a.support()) {
    MapReport T = c.bc.T(R, b), S = c.bc.S(R, b);
    if (!(T.injective && T.surjective && S.injective && S.surjective)) {
      v.char4 = false;
      v.reasons.push_back("char4: T or S is not bijective at " + at(b));
      break;
    }
  }

  v.char5 = composite_injective(c, R, why);
  if (!v.char5) v.reasons.push_back("char5: " + why);
  else if (!composite_injective(*c.dual, R, why)) {
    v.char5 = false;
    v.reasons.push_back("char5: on the dual complex, " + why);
  }

  v.zz = zigzag_page_r(c.zz, r);
  if (!v.zz) v.reasons.push_back("zz: an odd zigzag of length >= 3 or an even one longer than 2r");

  v.unanimous = v.char1 == v.zz && v.char2 == v.zz && v.char3 == v.zz && v.char4 == v.zz && v.char5 == v.zz;
  if (strict && !v.unanimous) {
    std::string msg = "characterizations disagree at r = " + std::to_string(r) + ":";
    for (const auto& s : v.reasons) msg += " [" + s + "]";
    throw Disagreement(msg);
  }
  return v;
}

VerdictSeries series_ctx(Context& c, int r_max, bool strict) {
  VerdictSeries out;
  for (int r = 0; r <= r_max; ++r) {
    out.verdicts.push_back(characterize_ctx(c, r, strict));
    if (out.verdicts.back().value() && out.minimal_r < 0) out.minimal_r = r;
    if (r > 0 && out.verdicts[r - 1].value() && !out.verdicts[r].value()) out.monotone = false;
  }
  return out;
}

Page0Report page0_ctx(Context& c) {
  Page0Report out;
  out.page0 = characterize_ctx(c, 0, true).value();
  out.ddbar_lemma = true;
  for (Bidegree b : c.a.support()) {
    Subspace exact = sum(sum(image(c.a.d1(minus(b, kE1))), image(c.a.d2(minus(b, kE2)))), c.dexact.at(b));
    if (!c.bc.im_ddbar(b).contains(intersect(c.kerd.at(b), exact))) {
      out.ddbar_lemma = false;
      break;
    }
  }
  if (!out.agree()) throw Disagreement("page-0 verdict and the ddbar-lemma test differ");
  return out;
}

}  // namespace

Subspace pure_d_exact(const DoubleComplex& a, Bidegree b) {
  int k = b.total();
  return pure_part(coboundaries(a, k), total_degree(a, k), b, a.dim(b));
}

Verdict characterize(const DoubleComplex& a, int r, bool strict) {
  Context c(a);
  return characterize_ctx(c, r, strict);
}

int default_r_max(const DoubleComplex& a) {
  SpectralSequence col(a, Side::column), row(a, Side::row);
  return std::max({3, col.degeneration(), row.degeneration()});
}

VerdictSeries verdict_series(const DoubleComplex& a, int r_max, bool strict) {
  Context c(a);
  return series_ctx(c, r_max, strict);
}

int minimal_r(const DoubleComplex& a, int r_max) { return verdict_series(a, r_max).minimal_r; }

Page0Report page0_equals_ddbar(const DoubleComplex& a) {
  Context c(a);
  return page0_ctx(c);
}

// ---- JSON ----

namespace {

ojson dims_json(const std::map<Bidegree, int>& m) {
  ojson j = ojson::object();
  for (auto [b, d] : m) j[b.key()] = d;
  return j;
}

}  // namespace

ojson pages_json(SpectralSequence& s) {
  ojson j;
  j["side"] = side_name(s.side());
  int deg = s.degeneration();
  j["degeneration"] = deg;
  ojson pages = ojson::array();
  for (int r = 1; r <= deg; ++r) {
    ojson p;
    p["r"] = r;
    std::map<Bidegree, int> dims;
    for (Bidegree b : s.complex().support())
      if (int e = s.e(r, b)) dims[b] = e;
    p["dims"] = dims_json(dims);
    ojson dn = ojson::array();
    for (auto [src, tgt] : s.d_nonzero(r)) {
      ojson e;
      e["from"] = src.key();
      e["to"] = tgt.key();
      e["rank"] = rank(s.page(r).d.at(src));
      dn.push_back(e);
    }
    p["d_nonzero"] = dn;
    pages.push_back(p);
  }
  j["pages"] = pages;
  return j;
}

ojson de_rham_json(const DeRhamData& d) {
  ojson j;
  ojson betti = ojson::object(), pure = ojson::object();
  for (auto [k, b] : d.betti) betti[std::to_string(k)] = b;
  for (auto [k, p] : d.pure) pure[std::to_string(k)] = p && d.full.at(k);
  j["betti"] = betti;
  j["pure_type_classes"] = dims_json(d.hdr);
  j["pure_by_degree"] = pure;
  j["pure"] = d.is_pure();
  return j;
}

ojson bc_a_json(BcAeppli& bc, int r_last) {
  ojson arr = ojson::array();
  for (int r = 1; r <= r_last; ++r) {
    std::map<Bidegree, int> h_bc, h_a;
    for (Bidegree b : bc.complex().support()) {
      if (int x = bc.h_bc(r, b)) h_bc[b] = x;
      if (int x = bc.h_a(r, b)) h_a[b] = x;
    }
    ojson e;
    e["r"] = r;
    e["bott_chern"] = dims_json(h_bc);
    e["aeppli"] = dims_json(h_a);
    arr.push_back(e);
  }
  return arr;
}

ojson varouchas_json(BcAeppli& bc, int r) {
  VarouchasReport v = varouchas_report(bc, r);
  ojson j;
  j["r"] = r;
  j["exact"] = v.exact;
  j["identity"] = v.identity;
  j["inequality"] = v.inequality;
  j["equality"] = v.equality;
  ojson per = ojson::object();
  for (auto [k, h] : v.hsum) {
    ojson e;
    e["h_bc+h_a"] = h;
    e["e_col+e_row"] = v.esum.count(k) ? v.esum.at(k) : 0;
    e["2b"] = v.betti2.count(k) ? v.betti2.at(k) : 0;
    per[std::to_string(k)] = e;
  }
  j["by_degree"] = per;
  return j;
}

ojson verdict_json(const Verdict& v) {
  ojson j;
  j["r"] = v.r;
  j["page_r_ddbar"] = v.value();
  j["char1_hodge_decomposition"] = v.char1;
  j["char2_degeneration_purity"] = v.char2;
  j["char3_exactness"] = v.char3;
  j["char4_T_S_isomorphisms"] = v.char4;
  j["char5_ST_injective"] = v.char5;
  j["zigzag"] = v.zz;
  j["unanimous"] = v.unanimous;
  j["reasons"] = v.reasons;
  return j;
}

ojson series_json(const VerdictSeries& s) {
  ojson j;
  ojson arr = ojson::array();
  for (const auto& v : s.verdicts) arr.push_back(verdict_json(v));
  j["by_r"] = arr;
  j["minimal_r"] = s.minimal_r < 0 ? ojson(nullptr) : ojson(s.minimal_r);
  j["monotone"] = s.monotone;
  return j;
}

ojson full_report(const DoubleComplex& a, const ReportOptions& opt) {
  ojson j;
  if (!opt.name.empty()) j["name"] = opt.name;
  auto errors = validate(a);
  if (!errors.empty()) {
    j["valid"] = false;
    j["errors"] = errors;
    return j;
  }
  j["valid"] = true;
  if (a.n) j["n"] = *a.n;
  std::map<Bidegree, int> dims;
  for (Bidegree b : a.support()) dims[b] = a.dim(b);
  j["dims"] = dims_json(dims);
  Context c(a);
  BcAeppli& bc = c.bc;
  const int r_max = opt.r_max < 0 ? std::max({3, bc.col().degeneration(), bc.row().degeneration()}) : opt.r_max;
  j["r_max"] = r_max;
  const DeRhamData& dr = c.dr;
  j["spectral"] = {{"column", pages_json(bc.col())}, {"row", pages_json(bc.row())}};
  j["de_rham"] = de_rham_json(dr);
  const int r_last = std::min(r_max, 3);
  j["bott_chern_aeppli"] = bc_a_json(bc, r_last);
  j["varouchas"] = ojson::array({varouchas_json(bc, 1), varouchas_json(bc, 2)});

  const MultiplicityTable& t = c.zz;
  ojson z = table_to_json(t);
  z["minimal_r"] = zigzag_minimal_r(t);
  z["dot"] = render(t, "dot");
  j["zigzags"] = z;

  VerdictSeries vs = series_ctx(c, r_max, true);
  j["verdicts"] = series_json(vs);
  Page0Report p0 = page0_ctx(c);
  j["page0_ddbar"] = {{"page0", p0.page0}, {"ddbar_lemma", p0.ddbar_lemma}, {"agree", p0.agree()}};

  // degree-1 invariants of the small-deformation lemma: b1 = 4, h^{1,0} = h^{0,1} = 2, h_A^{1,0} = 3
  {
    auto dim_or0 = [&](Bidegree b, auto f) { return a.dim(b) ? f(b) : 0; };
    int b1 = dr.betti.count(1) ? dr.betti.at(1) : 0;
    int h10 = dim_or0({1, 0}, [&](Bidegree b) { return bc.col().e(1, b); });
    int h01 = dim_or0({0, 1}, [&](Bidegree b) { return bc.col().e(1, b); });
    int ha10 = dim_or0({1, 0}, [&](Bidegree b) { return bc.h_a(1, b); });
    bool met = b1 == 4 && h10 == 2 && h01 == 2 && ha10 == 3;
    ojson l = {{"b1", b1}, {"h10", h10}, {"h01", h01}, {"hA10", ha10}, {"hypotheses_met", met}};
    if (met) {
      bool p1 = !dr.pure.count(1) || (dr.pure.at(1) && dr.full.at(1));
      bool p2 = !dr.pure.count(2) || (dr.pure.at(2) && dr.full.at(2));
      l["degree_1_or_2_not_pure"] = !(p1 && p2);
    }
    j["small_deformation_lemma"] = l;
  }

  if (a.n) {
    SggReport s = sgg_numeric(bc, r_last);
    ojson tz = ojson::object();
    for (auto [r, zero] : s.T_zero) tz[std::to_string(r)] = zero;
    j["sgg"] = {{"b1", s.b1}, {"h01", s.h01}, {"numeric_sgg", s.numeric_sgg}, {"T_zero", tz}};
  }

  if (opt.metric || opt.lie) {
    Metric g = opt.metric ? *opt.metric : Metric();
    const int rh = std::min(r_max, 2);
    ojson h;
    h["metric"] = metric_to_json(g);
    HarmonicLadder lad(a, g, rh);
    CheckReport lc = check_ladder(lad, bc.col());
    h["ladder_ok"] = lc.ok;
    CheckReport tc = three_space_check(a, g, rh);
    h["three_space_ok"] = tc.ok;
    if (opt.lie && !opt.metric) {
      DualityReport dr2 = dualities(*opt.lie, rh);
      h["dualities_ok"] = dr2.ok;
      h["nonsingular_grams"] = dr2.gram_checked;
    }
    h["r"] = rh;
    j["hodge"] = h;
  }

  if (opt.lie) {
    const LieModel& m = *opt.lie;
    ojson l;
    l["parallelisable"] = m.parallelisable();
    ojson er = ojson::object();
    try {
      Form w = canonical_omega(m);
      for (int r = 1; r <= r_last; ++r) er[std::to_string(r)] = er_sg_test(m, w, r);
    } catch (const NotGauduchon&) {
      er = "canonical metric is not Gauduchon";
    }
    l["er_sg_canonical"] = er;
    if (m.parallelisable() && m.n() >= 2) {
      ojson d;
      d["holomorphic_volume"] = "phi_1^...^phi_n, coefficient 1";
      TangentCohomology tcoh = tangent_cohomology(m);
      d["tangent_dim"] = tcoh.dim();
      d["tangent_basis"] = tcoh.labels;
      EssentialReport es = essential_spaces(m);
      d["z_equality"] = es.z_equality;
      d["e1"] = es.e1;
      d["e1_zero"] = es.e1_zero;
      d["e2"] = es.e2;
      d["PJ_identity"] = es.PJ_identity;
      d["essential_dim"] = es.essential_e1.dim();
      d["parallel_dim"] = es.parallel_e1.dim();
      d["essential_equals_parallel"] = es.essential_e1 == es.parallel_e1;
      MembershipReport mr = appendix2_membership(m);
      d["membership_ok"] = mr.ok();
      ojson cs = ojson::array();
      for (const auto& c : mr.cases)
        cs.push_back({{"case", c.name}, {"pairs", c.pairs}, {"members", c.members}, {"zero", c.zero}});
      d["membership_cases"] = cs;
      l["deformations"] = d;
    }
    j["lie"] = l;
  }
  return j;
}

}  // namespace bcx
