#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bicomplex/cohomology.hpp"
#include "bicomplex/hodge.hpp"
#include "bicomplex/io.hpp"
#include "bicomplex/kuranishi.hpp"
#include "bicomplex/models.hpp"
#include "bicomplex/verdict.hpp"
#include "bicomplex/zigzag.hpp"

using namespace bcx;

namespace {

enum Exit { ok = 0, negative = 1, input_error = 2, disagreement = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string name;
  DoubleComplex a;
  std::optional<LieModel> lie;
};

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// corpus:NAME, or a file: .lie structure equations, .cdga, otherwise complex JSON
Loaded load(const std::string& in) {
  Loaded l;
  l.name = in;
  if (in.rfind("corpus:", 0) == 0) {
    std::string name = in.substr(7);
    l.name = name;
    l.a = corpus(name);
    l.lie = corpus_lie(name);
    return l;
  }
  std::string text = read_file(in);
  if (ends_with(in, ".lie")) {
    l.lie = parse_structure_equations(text);
    l.a = exterior_bicomplex(*l.lie);
  } else if (ends_with(in, ".cdga")) {
    l.a = cdga_complex(parse_cdga(text));
  } else {
    l.a = complex_from_json(ojson::parse(text));
  }
  return l;
}

Loaded load_valid(const std::string& in) {
  Loaded l = load(in);
  auto errors = validate(l.a);
  if (!errors.empty()) {
    std::string msg = "invalid complex:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw InputError(msg);
  }
  return l;
}

std::string verdict_line(const Verdict& v) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  std::ostringstream os;
  os << "page-" << v.r << "-ddbar: " << b(v.value()) << "\n";
  os << "  hodge decomposition:     " << b(v.char1) << "\n";
  os << "  degeneration and purity: " << b(v.char2) << "\n";
  os << "  exactness equivalences:  " << b(v.char3) << "\n";
  os << "  T and S isomorphisms:    " << b(v.char4) << "\n";
  os << "  S T injective:           " << b(v.char5) << "\n";
  os << "  zigzag criterion:        " << b(v.zz) << "\n";
  for (const auto& r : v.reasons) os << "  reason: " << r << "\n";
  return os.str();
}

Vec direction_from_json(const LieModel& m, const ojson& j) {
  TangentCohomology tc = tangent_cohomology(m);
  Vec t(tc.dim());
  if (!j.is_object()) throw InputError("direction file must be an object keyed by basis labels");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto pos = std::find(tc.labels.begin(), tc.labels.end(), it.key());
    if (pos == tc.labels.end()) throw InputError("unknown tangent basis label '" + it.key() + "'");
    const ojson& v = it.value();
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    t[pos - tc.labels.begin()] = Scalar::parse(s);
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double complexes: spectral sequences, cohomologies, zigzags and page-r-ddbar verdicts"};
  app.require_subcommand(1);
  std::string in, side = "both", render_fmt, metric_file, direction_file, out_file;
  int r = -1, order = 3, r_max = -1;
  bool minimal = false, assert_flag = false;

  auto input = [&](CLI::App* s) { s->add_option("input", in, "file or corpus:NAME")->required(); };

  auto* c_validate = app.add_subcommand("validate", "check the double complex identities");
  input(c_validate);
  auto* c_pages = app.add_subcommand("pages", "Frolicher spectral sequence pages");
  input(c_pages);
  c_pages->add_option("--side", side, "col, row or both")->check(CLI::IsMember({"col", "row", "both"}));
  auto* c_coh = app.add_subcommand("cohomology", "De Rham, Bott-Chern/Aeppli and Varouchas data");
  input(c_coh);
  c_coh->add_option("--r", r, "last page for the higher Bott-Chern/Aeppli spaces (default 1)");
  auto* c_zz = app.add_subcommand("zigzags", "decomposition into squares and zigzags");
  input(c_zz);
  c_zz->add_option("--render", render_fmt, "dot or tex")->check(CLI::IsMember({"dot", "tex"}));
  auto* c_check = app.add_subcommand("check", "page-r-ddbar verdict");
  input(c_check);
  auto* opt_r = c_check->add_option("--r", r, "page to test");
  auto* opt_min = c_check->add_flag("--minimal", minimal, "least r with a positive verdict");
  opt_r->excludes(opt_min);
  c_check->add_option("--r-max", r_max, "search bound for --minimal");
  c_check->add_flag("--assert", assert_flag, "exit 1 on a negative verdict");
  auto* c_hodge = app.add_subcommand("hodge", "harmonic ladder, 3-space decompositions and dualities");
  input(c_hodge);
  c_hodge->add_option("--metric", metric_file, "metric JSON (default: orthonormal monomials)");
  c_hodge->add_option("--r", r, "last page (default 2)");
  auto* c_kur = app.add_subcommand("kuranishi", "power series solution of the integrability equation");
  input(c_kur);
  c_kur->add_option("--direction", direction_file, "JSON map from tangent basis labels to coefficients")->required();
  c_kur->add_option("--order", order, "last order N")->check(CLI::Range(1, 50));
  c_kur->add_flag("--assert", assert_flag, "exit 1 when obstructed");
  auto* c_report = app.add_subcommand("report", "full JSON report");
  input(c_report);
  c_report->add_option("--out", out_file, "output file (default: standard output)");
  c_report->add_option("--metric", metric_file, "metric JSON");
  c_report->add_option("--r-max", r_max, "last verdict page");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : input_error;
  }

  std::ostringstream out;
  int code = ok;
  try {
    if (c_validate->parsed()) {
      Loaded l = load_valid(in);
      out << "valid: " << l.name << ", total dimension " << l.a.total_dim() << "\n";
    } else if (c_pages->parsed()) {
      Loaded l = load_valid(in);
      ojson j = ojson::object();
      if (side != "row") {
        SpectralSequence s(l.a, Side::column);
        j["column"] = pages_json(s);
      }
      if (side != "col") {
        SpectralSequence s(l.a, Side::row);
        j["row"] = pages_json(s);
      }
      out << j.dump(2) << "\n";
    } else if (c_coh->parsed()) {
      Loaded l = load_valid(in);
      int rr = r < 0 ? 1 : r;
      if (rr < 1) throw InputError("--r must be at least 1");
      BcAeppli bc(l.a);
      ojson j;
      j["de_rham"] = de_rham_json(de_rham(l.a));
      j["bott_chern_aeppli"] = bc_a_json(bc, rr);
      ojson v = ojson::array();
      for (int k = 1; k <= rr; ++k) v.push_back(varouchas_json(bc, k));
      j["varouchas"] = v;
      out << j.dump(2) << "\n";
    } else if (c_zz->parsed()) {
      Loaded l = load_valid(in);
      MultiplicityTable t = decompose(l.a);
      if (render_fmt.empty()) {
        ojson j = table_to_json(t);
        j["minimal_r"] = zigzag_minimal_r(t);
        out << j.dump(2) << "\n";
      } else {
        out << render(t, render_fmt);
      }
    } else if (c_check->parsed()) {
      Loaded l = load_valid(in);
      if (r >= 0) {
        Verdict v = characterize(l.a, r);
        out << verdict_line(v);
        if (!v.value() && assert_flag) code = negative;
      } else {
        int bound = r_max < 0 ? default_r_max(l.a) : r_max;
        int m = minimal_r(l.a, bound);
        if (m < 0)
          out << "minimal page-r-ddbar: none up to r=" << bound << "\n";
        else
          out << "minimal page-r-ddbar: r=" << m << "\n";
        if (m < 0 && assert_flag) code = negative;
      }
    } else if (c_hodge->parsed()) {
      Loaded l = load_valid(in);
      Metric g = metric_file.empty() ? Metric() : metric_from_json(ojson::parse(read_file(metric_file)), l.a);
      int rh = r < 0 ? 2 : r;
      if (rh < 1) throw InputError("--r must be at least 1");
      HarmonicLadder lad(l.a, g, rh);
      SpectralSequence col(l.a, Side::column);
      CheckReport lc = check_ladder(lad, col);
      CheckReport tc = three_space_check(l.a, g, rh);
      ojson j;
      j["r"] = rh;
      j["ladder_ok"] = lc.ok;
      j["ladder_failures"] = lc.failures;
      j["three_space_ok"] = tc.ok;
      j["three_space_failures"] = tc.failures;
      if (l.lie && metric_file.empty()) {
        DualityReport d = dualities(*l.lie, rh);
        j["dualities_ok"] = d.ok;
        j["nonsingular_grams"] = d.gram_checked;
        j["duality_failures"] = d.failures;
      }
      out << j.dump(2) << "\n";
    } else if (c_kur->parsed()) {
      Loaded l = load_valid(in);
      if (!l.lie) throw InputError("kuranishi needs a Lie model (.lie file or corpus nilmanifold)");
      Vec t = direction_from_json(*l.lie, ojson::parse(read_file(direction_file)));
      ojson j;
      try {
        DeformationSeries s = run_kuranishi(*l.lie, t, order);
        ojson psi = ojson::array();
        for (std::size_t nu = 0; nu < s.psi.size(); ++nu) {
          ojson e;
          e["order"] = nu + 1;
          e["psi"] = vector_form_str(*l.lie, s.psi[nu]);
          if (nu >= 1) {
            e["residual_zero"] = static_cast<bool>(s.residual_zero[nu - 1]);
            e["in_im_del"] = static_cast<bool>(s.im_del[nu - 1]);
          }
          psi.push_back(e);
        }
        j["obstructed"] = false;
        j["series"] = psi;
      } catch (const Obstructed& e) {
        j["obstructed"] = true;
        j["order"] = e.nu;
        if (assert_flag) code = negative;
      }
      out << j.dump(2) << "\n";
    } else if (c_report->parsed()) {
      Loaded l = load(in);
      ReportOptions opt;
      opt.name = l.name;
      opt.r_max = r_max;
      opt.lie = l.lie;
      if (!metric_file.empty()) opt.metric = metric_from_json(ojson::parse(read_file(metric_file)), l.a);
      std::string text = full_report(l.a, opt).dump(2) + "\n";
      if (out_file.empty()) {
        out << text;
      } else {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw InputError("cannot write " + out_file);
        f << text;
      }
    }
  } catch (const Disagreement& e) {
    std::cout << out.str();
    std::cerr << "internal disagreement: " << e.what() << "\n";
    return disagreement;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
  std::cout << out.str();
  return code;
}
