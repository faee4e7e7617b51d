#include <cctype>
#include <set>
#include <sstream>

#include "bicomplex/io.hpp"
#include "bicomplex/models.hpp"

namespace bcx {

namespace {

Bidegree mono_deg(const CdgaModel& m, const Exponents& e) {
  Bidegree b{0, 0};
  for (size_t i = 0; i < e.size(); ++i) b = {b.p + e[i] * m.gens[i].deg.p, b.q + e[i] * m.gens[i].deg.q};
  return b;
}

bool in_window(const CdgaModel& m, Bidegree b) { return b.p >= 0 && b.q >= 0 && b.p <= m.n && b.q <= m.n; }

// sign of reordering e1*e2 into generator order; 0 if an odd generator repeats
int mono_mul_sign(const CdgaModel& m, const Exponents& a, const Exponents& b) {
  int swaps = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!m.gens[i].odd || !a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!m.gens[j].odd || !b[j]) continue;
      if (i == j) return 0;
      if (i > j) ++swaps;
    }
  }
  return swaps % 2 ? -1 : 1;
}

Poly mul(const CdgaModel& m, const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [ea, ca] : x)
    for (const auto& [eb, cb] : y) {
      int s = mono_mul_sign(m, ea, eb);
      if (!s) continue;
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (!in_window(m, mono_deg(m, e))) continue;
      auto& slot = out[e];
      slot += Scalar(s) * ca * cb;
      if (slot.is_zero()) out.erase(e);
    }
  return out;
}

Poly apply_d(const CdgaModel& m, const std::map<int, Poly>& dg, const Exponents& e) {
  // d(g_1 g_2 ... g_k) = sum_t (-1)^{|g_1..g_{t-1}|} g_1..d(g_t)..g_k
  Poly out;
  Exponents prefix(e.size(), 0);
  int prefix_deg = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    for (int rep = 0; rep < e[i]; ++rep) {
      Exponents suffix = e;
      for (size_t j = 0; j < e.size(); ++j) suffix[j] -= prefix[j];
      suffix[i] -= 1;
      auto it = dg.find(static_cast<int>(i));
      if (it != dg.end()) {
        Poly term = mul(m, mul(m, Poly{{prefix, Scalar(1)}}, it->second), Poly{{suffix, Scalar(1)}});
        Scalar sgn(prefix_deg % 2 ? -1 : 1);
        for (const auto& [ex, c] : term) {
          auto& slot = out[ex];
          slot += sgn * c;
          if (slot.is_zero()) out.erase(ex);
        }
      }
      prefix[i] += 1;
      prefix_deg += m.gens[i].deg.total();
    }
  }
  return out;
}

Poly apply_d(const CdgaModel& m, const std::map<int, Poly>& dg, const Poly& p) {
  Poly out;
  for (const auto& [e, c] : p)
    for (const auto& [e2, c2] : apply_d(m, dg, e)) {
      auto& slot = out[e2];
      slot += c * c2;
      if (slot.is_zero()) out.erase(e2);
    }
  return out;
}

void enumerate(const CdgaModel& m, size_t i, Exponents& e, std::map<Bidegree, std::vector<Exponents>>& out) {
  Bidegree b = mono_deg(m, e);
  if (b.p > m.n || b.q > m.n) return;
  if (i == m.gens.size()) {
    out[b].push_back(e);
    return;
  }
  int cap = m.gens[i].odd ? 1 : 2 * m.n + 2;
  for (int k = 0; k <= cap; ++k) {
    e[i] = k;
    Bidegree bb = mono_deg(m, e);
    if (bb.p > m.n || bb.q > m.n) break;
    enumerate(m, i + 1, e, out);
  }
  e[i] = 0;
}

std::optional<Bidegree> poly_deg(const CdgaModel& m, const Poly& p) {
  std::optional<Bidegree> b;
  for (const auto& [e, c] : p) {
    Bidegree x = mono_deg(m, e);
    if (b && *b != x) throw InvalidComplex("inhomogeneous polynomial in CDGA model");
    b = x;
  }
  return b;
}

}  // namespace

DoubleComplex cdga_complex(const CdgaModel& m) {
  for (const auto& g : m.gens) {
    if (g.deg.p < 0 || g.deg.q < 0 || g.deg.total() == 0)
      throw InvalidComplex("generator " + g.name + " needs a positive bidegree");
    if (g.odd != (g.deg.total() % 2 == 1)) throw InvalidComplex("parity of " + g.name + " disagrees with its total degree");
  }
  std::map<Bidegree, std::vector<Exponents>> monos;
  Exponents e(m.gens.size(), 0);
  enumerate(m, 0, e, monos);
  std::map<Bidegree, std::map<Exponents, int>> idx;
  for (auto& [b, v] : monos) {
    std::sort(v.begin(), v.end());
    for (size_t k = 0; k < v.size(); ++k) idx[b][v[k]] = static_cast<int>(k);
  }
  auto to_vec = [&](const Poly& p, Bidegree b) {
    Vec v(monos[b].size());
    for (const auto& [ex, c] : p) v[idx[b].at(ex)] = c;
    return v;
  };

  // differential bi-ideal generated by the relations
  std::map<Bidegree, Subspace> gen_span;
  std::vector<Poly> closure;
  std::vector<Poly> todo = m.relations;
  while (!todo.empty()) {
    Poly r = todo.back();
    todo.pop_back();
    Poly trunc;
    for (const auto& [ex, c] : r)
      if (in_window(m, mono_deg(m, ex))) trunc[ex] = c;
    auto b = poly_deg(m, trunc);
    if (!b) continue;
    auto it = gen_span.find(*b);
    if (it == gen_span.end()) it = gen_span.emplace(*b, Subspace(static_cast<int>(monos[*b].size()))).first;
    Vec v = to_vec(trunc, *b);
    if (it->second.contains(v)) continue;
    it->second = sum(it->second, Subspace::span({v}, it->second.ambient()));
    closure.push_back(trunc);
    todo.push_back(apply_d(m, m.del, trunc));
    todo.push_back(apply_d(m, m.dbar, trunc));
  }
  std::map<Bidegree, std::vector<Vec>> ideal;
  for (const auto& r : closure) {
    Bidegree br = *poly_deg(m, r);
    for (const auto& [b, v] : monos)
      for (const auto& mono : v) {
        Bidegree t = b + br;
        if (!in_window(m, t)) continue;
        Poly prod = mul(m, Poly{{mono, Scalar(1)}}, r);
        if (!prod.empty()) ideal[t].push_back(to_vec(prod, t));
      }
  }

  // quotient coordinates: non-pivot monomials of the reduced ideal
  struct Quot {
    std::vector<Vec> rows;
    std::vector<int> piv, free;
  };
  std::map<Bidegree, Quot> quot;
  for (const auto& [b, v] : monos) {
    Quot q;
    q.rows = ideal[b];
    q.piv = echelonize(q.rows, static_cast<int>(v.size()));
    std::set<int> ps(q.piv.begin(), q.piv.end());
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
      if (!ps.count(j)) q.free.push_back(j);
    quot[b] = std::move(q);
  }
  auto project = [&](const Vec& x, Bidegree b) {
    const Quot& q = quot[b];
    Vec y = x;
    for (size_t r = 0; r < q.rows.size(); ++r) {
      Scalar f = y[q.piv[r]];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < y.size(); ++j)
        if (!q.rows[r][j].is_zero()) y[j].sub_mul(f, q.rows[r][j]);
    }
    Vec out(q.free.size());
    for (size_t k = 0; k < q.free.size(); ++k) out[k] = y[q.free[k]];
    return out;
  };

  DoubleComplex a;
  a.n = m.n;
  for (const auto& [b, q] : quot) a.set_dim(b, static_cast<int>(q.free.size()));
  for (const auto& [b, q] : quot) {
    if (q.free.empty()) continue;
    for (int which = 0; which < 2; ++which) {
      Bidegree t = which == 0 ? Bidegree{b.p + 1, b.q} : Bidegree{b.p, b.q + 1};
      Matrix d(a.dim(t), a.dim(b));
      if (a.dim(t) > 0) {
        for (size_t k = 0; k < q.free.size(); ++k) {
          Poly img = apply_d(m, which == 0 ? m.del : m.dbar, monos[b][q.free[k]]);
          Vec col = project(to_vec(img, t), t);
          for (int i = 0; i < d.rows(); ++i) d(i, static_cast<int>(k)) = col[i];
        }
      }
      if (which == 0)
        a.set_d1(b, d);
      else
        a.set_d2(b, d);
    }
  }
  return a;
}

namespace {

struct CdgaParser {
  CdgaModel m;
  std::map<std::string, int> gen_index;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError("line " + std::to_string(line) + ": " + msg); }

  static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }

  Poly poly(const std::string& text) {
    Poly p;
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail("empty polynomial");
    if (s == "0") return p;
    size_t i = 0;
    while (i < s.size()) {
      Scalar sign(1);
      if (s[i] == '+' || s[i] == '-') {
        if (s[i] == '-') sign = Scalar(-1);
        ++i;
      } else if (i != 0) {
        fail("expected '+' or '-'");
      }
      size_t j = i;
      int depth = 0;
      while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-'))) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')') --depth;
        ++j;
      }
      std::string term = s.substr(i, j - i);
      i = j;
      Scalar coef = sign;
      Exponents e(m.gens.size(), 0);
      std::stringstream ts(term);
      std::string factor;
      while (std::getline(ts, factor, '*')) {
        if (factor.empty()) fail("empty factor in '" + term + "'");
        if (factor.front() == '(' || std::isdigit(static_cast<unsigned char>(factor.front()))) {
          std::string lit = factor;
          if (lit.front() == '(') lit = lit.substr(1, lit.size() - 2);
          try {
            coef *= Scalar::parse(lit);
          } catch (const ParseError& ex) {
            fail(ex.what());
          }
          continue;
        }
        std::string name = factor;
        int pw = 1;
        if (auto c = factor.find('^'); c != std::string::npos) {
          name = factor.substr(0, c);
          pw = std::stoi(factor.substr(c + 1));
        }
        auto it = gen_index.find(name);
        if (it == gen_index.end()) fail("unknown generator '" + name + "'");
        e[it->second] += pw;
      }
      for (size_t g = 0; g < e.size(); ++g)
        if (m.gens[g].odd && e[g] > 1) {
          e.clear();
          break;
        }
      if (e.empty()) continue;
      auto& slot = p[e];
      slot += coef;
      if (slot.is_zero()) p.erase(e);
    }
    return p;
  }

  CdgaModel run(const std::string& text) {
    std::stringstream in(text);
    std::string raw;
    bool have_n = false;
    while (std::getline(in, raw)) {
      ++line;
      std::string s = trim(raw.substr(0, raw.find('#')));
      if (s.empty()) continue;
      std::stringstream ls(s);
      std::string head;
      ls >> head;
      if (head == "n") {
        std::string eq;
        ls >> eq >> m.n;
        if (eq != "=" || !ls) fail("expected 'n = <int>'");
        have_n = true;
      } else if (head == "gen") {
        CdgaGenerator g;
        std::string deg, parity;
        ls >> g.name >> deg >> parity;
        if (deg.size() < 5 || deg.front() != '(' || deg.back() != ')') fail("expected '(p,q)' bidegree");
        try {
          g.deg = parse_key(deg.substr(1, deg.size() - 2));
        } catch (const ParseError& ex) {
          fail(ex.what());
        }
        if (parity != "odd" && parity != "even") fail("parity must be odd or even");
        g.odd = parity == "odd";
        if (gen_index.count(g.name)) fail("duplicate generator '" + g.name + "'");
        gen_index[g.name] = static_cast<int>(m.gens.size());
        m.gens.push_back(g);
      } else if (head == "del" || head == "dbar") {
        std::string name, eq;
        ls >> name >> eq;
        if (eq != "=") fail("expected '='");
        auto it = gen_index.find(name);
        if (it == gen_index.end()) fail("unknown generator '" + name + "'");
        std::string rest;
        std::getline(ls, rest);
        (head == "del" ? m.del : m.dbar)[it->second] = poly(rest);
      } else if (head == "rel") {
        std::string rest;
        std::getline(ls, rest);
        m.relations.push_back(poly(rest));
      } else {
        fail("unknown directive '" + head + "'");
      }
    }
    if (!have_n) throw ParseError("missing 'n = <int>' line");
    return m;
  }
};

}  // namespace

CdgaModel parse_cdga(const std::string& text) { return CdgaParser().run(text); }

CdgaModel calabi_eckmann_cdga(int u, int v) {
  if (u < 0 || v < u) throw UnknownModel("ce(u,v) requires 0 <= u <= v");
  std::string t = "n = " + std::to_string(u + v + 1) + "\n";
  t += "gen x01 (0,1) odd\ngen x11 (1,1) even\n";
  t += "gen y (" + std::to_string(u + 1) + "," + std::to_string(u) + ") odd\n";
  t += "gen x (" + std::to_string(v + 1) + "," + std::to_string(v) + ") odd\n";
  t += "dbar y = x11^" + std::to_string(u + 1) + "\n";
  t += "del x01 = x11\n";
  t += "rel x01*y\n";
  return parse_cdga(t);
}

DoubleComplex calabi_eckmann_model(int u, int v) { return cdga_complex(calabi_eckmann_cdga(u, v)); }

}  // namespace bcx
