#include <regex>

#include "bicomplex/models.hpp"

namespace bcx {

namespace {

bool parse_torus(const std::string& name, int* n) {
  static const std::regex re(R"(torus\((\d+)\))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return false;
  *n = std::stoi(m[1]);
  return true;
}

bool parse_ce(const std::string& name, int* u, int* v) {
  static const std::regex re(R"(ce\((\d+),(\d+)\))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return false;
  *u = std::stoi(m[1]);
  *v = std::stoi(m[2]);
  return true;
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"torus(1)", "torus(2)", "torus(3)", "iwasawa3", "iwasawa5", "h5_tilde", "ce(0,1)", "ce(1,1)"};
}

std::string corpus_lie_text(const std::string& name) {
  int n;
  if (parse_torus(name, &n)) {
    if (n < 1 || n > 5) throw UnknownModel("torus(n) supports 1 <= n <= 5");
    std::string t;
    for (int k = 1; k <= n; ++k) t += "dphi" + std::to_string(k) + " = 0\n";
    return t;
  }
  if (name == "iwasawa3") return "dphi1 = 0\ndphi2 = 0\ndphi3 = -phi1^phi2\n";
  if (name == "iwasawa5") return "dphi1 = 0\ndphi2 = 0\ndphi3 = phi1^phi2\ndphi4 = phi1^phi3\ndphi5 = phi2^phi3\n";
  if (name == "h5_tilde") return "dtau1 = 0\ndtau2 = 0\ndtau3 = tau1^~tau2\n";
  return "";
}

std::optional<LieModel> corpus_lie(const std::string& name) {
  std::string t = corpus_lie_text(name);
  if (t.empty()) return std::nullopt;
  return parse_structure_equations(t);
}

DoubleComplex corpus(const std::string& name) {
  if (auto lie = corpus_lie(name)) return lie->complex();
  int u, v;
  if (parse_ce(name, &u, &v)) return calabi_eckmann_model(u, v);
  try {
    return elementary(parse_shape(name));
  } catch (const InvalidComplex&) {
  } catch (const std::logic_error&) {
  }
  throw UnknownModel("unknown model '" + name + "'");
}

}  // namespace bcx
