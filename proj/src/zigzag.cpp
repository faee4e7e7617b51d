#include "bicomplex/zigzag.hpp"

#include <cstdio>
#include <sstream>

#include "bicomplex/cohomology.hpp"

namespace bcx {

namespace {

const Bidegree kE1{1, 0}, kE2{0, 1};

ElementaryShape make(ShapeKind k, Bidegree anchor, int length) {
  ElementaryShape s;
  s.kind = k;
  s.anchor = anchor;
  s.length = length;
  return s;
}

// generators of a zigzag with anchor o
int generators(const ElementaryShape& s) {
  switch (s.kind) {
    case ShapeKind::odd_L: return (s.length - 1) / 2;
    case ShapeKind::odd_M: return (s.length + 1) / 2;
    case ShapeKind::even_type1:
    case ShapeKind::even_type2: return s.length / 2;
    default: return 1;
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::vector<std::pair<ElementaryShape, int>> MultiplicityTable::shapes() const {
  std::map<ElementaryShape, int> out;
  for (auto [b, c] : squares) out[make(ShapeKind::square, b, 4)] += c;
  for (const auto& [key, c] : evens) {
    auto [side, l, src] = key;
    if (side == Side::column)
      out[make(ShapeKind::even_type1, src, 2 * l)] += c;
    else
      out[make(ShapeKind::even_type2, {src.p - l + 1, src.q + l - 1}, 2 * l)] += c;
  }
  for (const auto& [key, c] : odds) {
    auto [k, b] = key;
    int s = b.total() - k;
    if (s == 0)
      out[make(ShapeKind::dot, b, 1)] += c;
    else if (s > 0)
      out[make(ShapeKind::odd_L, {b.p - s, b.q - 1}, 2 * s + 1)] += c;
    else
      out[make(ShapeKind::odd_M, {b.p, b.q - s}, 1 - 2 * s)] += c;
  }
  return {out.begin(), out.end()};
}

int MultiplicityTable::total_dim() const {
  int n = 0;
  for (auto& [s, c] : shapes()) n += s.length * c;
  return n;
}

void add_shape(MultiplicityTable& t, const ElementaryShape& s, int count) {
  const Bidegree a = s.anchor;
  int h = (s.length - 1) / 2;
  switch (s.kind) {
    case ShapeKind::square: t.squares[a] += count; break;
    case ShapeKind::dot: t.odds[{a.total(), a}] += count; break;
    case ShapeKind::even_type1: t.evens[{Side::column, s.length / 2, a}] += count; break;
    case ShapeKind::even_type2: {
      int l = s.length / 2;
      t.evens[{Side::row, l, Bidegree{a.p + l - 1, a.q - l + 1}}] += count;
      break;
    }
    case ShapeKind::odd_L: {
      Bidegree b{a.p + h, a.q + 1};
      t.odds[{b.total() - h, b}] += count;
      break;
    }
    case ShapeKind::odd_M: {
      Bidegree b{a.p, a.q - h};
      t.odds[{b.total() + h, b}] += count;
      break;
    }
  }
}

MultiplicityTable table_of(const std::vector<ElementaryShape>& shapes) {
  MultiplicityTable t;
  for (const auto& s : shapes) add_shape(t, s);
  return t;
}

MultiplicityTable decompose(const DoubleComplex& a) {
  if (a.box().empty()) return {};
  SpectralSequence col(a, Side::column), row(a, Side::row);
  return decompose(a, col, row, de_rham(a));
}

MultiplicityTable decompose(const DoubleComplex& a, SpectralSequence& col, SpectralSequence& row,
                            const DeRhamData& dr) {
  MultiplicityTable t;
  if (a.box().empty()) return t;
  for (Bidegree b : a.support()) {
    int rk = rank(a.d2(b + kE1) * a.d1(b));
    if (rk) t.squares[b] = rk;
  }
  for (SpectralSequence* sp : {&col, &row}) {
    SpectralSequence& ss = *sp;
    Side side = ss.side();
    for (int l = 1; l <= ss.r_max(); ++l) {
      if (ss.d_zero(l)) continue;
      for (const auto& [src, m] : ss.page(l).d) {
        int rk = rank(m);
        if (rk) t.evens[{side, l, src}] = rk;
      }
    }
  }
  for (int k = dr.kmin; k <= dr.kmax; ++k)
    for (int p = dr.pmin; p <= dr.pmax; ++p)
      for (int q = dr.qmin; q <= dr.qmax; ++q) {
        int d = dr.mult(p, q, k) - dr.mult(p + 1, q, k) - dr.mult(p, q + 1, k) + dr.mult(p + 1, q + 1, k);
        if (d < 0)
          throw NegativeMultiplicity("negative odd count at k=" + std::to_string(k) + " (" + Bidegree{p, q}.key() + ")");
        if (d) t.odds[{k, Bidegree{p, q}}] = d;
      }
  if (t.total_dim() != a.total_dim())
    throw NegativeMultiplicity("shape dimensions sum to " + std::to_string(t.total_dim()) + ", complex has " +
                               std::to_string(a.total_dim()));
  return t;
}

DoubleComplex reconstruct(const MultiplicityTable& t) {
  DoubleComplex a;
  for (const auto& [s, c] : t.shapes())
    for (int i = 0; i < c; ++i) a = direct_sum(a, elementary(s));
  return a;
}

bool zigzag_page_r(const MultiplicityTable& t, int r) {
  int m = zigzag_minimal_r(t);
  return m >= 0 && m <= r;
}

int zigzag_minimal_r(const MultiplicityTable& t) {
  for (const auto& [key, c] : t.odds)
    if (std::get<1>(key).total() != std::get<0>(key) && c) return -1;
  int r = 0;
  for (const auto& [key, c] : t.evens)
    if (c) r = std::max(r, std::get<1>(key));
  return r;
}

ElementaryShape reflect_diagonal(const ElementaryShape& s) {
  const Bidegree o = s.anchor;
  int m = generators(s);
  switch (s.kind) {
    case ShapeKind::square:
    case ShapeKind::dot: return make(s.kind, o.swapped(), s.length);
    case ShapeKind::even_type1: return make(ShapeKind::even_type2, {o.q - m + 1, o.p + m - 1}, s.length);
    case ShapeKind::even_type2: return make(ShapeKind::even_type1, {o.q - m + 1, o.p + m - 1}, s.length);
    default: return make(s.kind, {o.q - m + 1, o.p + m - 1}, s.length);
  }
}

ElementaryShape reflect_antidiagonal(const ElementaryShape& s, int n) {
  const Bidegree o = s.anchor;
  int m = generators(s);
  switch (s.kind) {
    case ShapeKind::square: return make(s.kind, {n - o.p - 1, n - o.q - 1}, 4);
    case ShapeKind::dot: return make(s.kind, {n - o.p, n - o.q}, 1);
    // sinks become sources: the m+1 corners of L are the generators of M
    case ShapeKind::odd_L: return make(ShapeKind::odd_M, {n - o.p - m, n - o.q + m - 1}, s.length);
    case ShapeKind::odd_M: return make(ShapeKind::odd_L, {n - o.p - m + 1, n - o.q + m - 2}, s.length);
    case ShapeKind::even_type1: return make(s.kind, {n - o.p - m, n - o.q + m - 1}, s.length);
    case ShapeKind::even_type2: return make(s.kind, {n - o.p - m + 1, n - o.q + m - 2}, s.length);
  }
  return s;
}

SymmetryReport symmetry_check(const DoubleComplex& a) {
  if (!a.has_conj()) throw std::invalid_argument("symmetry check needs a conjugation");
  if (!a.n) throw std::invalid_argument("symmetry check needs the dimension n");
  int n = *a.n;
  std::map<ElementaryShape, int> mult;
  for (auto& [s, c] : decompose(a).shapes()) mult[s] = c;
  auto count = [&](const ElementaryShape& s) {
    auto it = mult.find(s);
    return it == mult.end() ? 0 : it->second;
  };
  SymmetryReport out;
  for (auto& [s, c] : mult) {
    ElementaryShape r = reflect_diagonal(s), d = reflect_antidiagonal(s, n);
    if (count(r) != c)
      out.mismatches.push_back(shape_name(s) + " x" + std::to_string(c) + " vs diagonal image " + shape_name(r) + " x" +
                               std::to_string(count(r)));
    if (count(d) != c)
      out.mismatches.push_back(shape_name(s) + " x" + std::to_string(c) + " vs antidiagonal image " + shape_name(d) +
                               " x" + std::to_string(count(d)));
  }
  out.ok = out.mismatches.empty();
  return out;
}

std::string render(const MultiplicityTable& t, const std::string& format) {
  if (format != "dot" && format != "tex") throw std::invalid_argument("unknown render format '" + format + "'");
  bool dot = format == "dot";
  std::ostringstream os;
  if (dot)
    os << "digraph zigzags {\n  node [shape=point, width=0.08];\n";
  else
    os << "\\begin{tikzpicture}[x=1.4cm, y=1.4cm]\n";
  int idx = 0;
  for (const auto& [s, c] : t.shapes())
    for (int copy = 0; copy < c; ++copy, ++idx) {
      DoubleComplex e = elementary(s);
      double off = 0.12 * (idx % 6);
      auto id = [&](Bidegree b) {
        std::string x = "z" + std::to_string(idx) + "_" + std::to_string(b.p) + "_" + std::to_string(b.q);
        for (char& ch : x)
          if (ch == '-') ch = 'm';
        return x;
      };
      if (dot) {
        os << "  // " << shape_name(s) << "\n";
      } else {
        os << "  % " << shape_name(s) << "\n";
      }
      for (Bidegree b : e.support()) {
        std::string x = fmt(b.p + off), y = fmt(b.q + off);
        if (dot)
          os << "  " << id(b) << " [pos=\"" << x << "," << y << "!\"];\n";
        else
          os << "  \\node (" << id(b) << ") at (" << x << "," << y << ") {$\\bullet$};\n";
      }
      auto edges = [&](const std::map<Bidegree, Matrix>& m, Bidegree step, const char* name) {
        for (const auto& [b, mat] : m) {
          if (mat.is_zero()) continue;
          if (dot)
            os << "  " << id(b) << " -> " << id(b + step) << " [label=\"" << name << "\"];\n";
          else
            os << "  \\draw[->] (" << id(b) << ") -- (" << id(b + step) << ");\n";
        }
      };
      edges(e.d1_map(), kE1, "d1");
      edges(e.d2_map(), kE2, "d2");
    }
  os << (dot ? "}\n" : "\\end{tikzpicture}\n");
  return os.str();
}

ojson table_to_json(const MultiplicityTable& t) {
  ojson j;
  j["squares"] = ojson::object();
  for (auto [b, c] : t.squares) j["squares"][b.key()] = c;
  j["evens"] = ojson::array();
  for (const auto& [key, c] : t.evens) {
    auto [side, l, b] = key;
    j["evens"].push_back({{"side", side_name(side)}, {"l", l}, {"p", b.p}, {"q", b.q}, {"mult", c}});
  }
  j["odds"] = ojson::array();
  for (const auto& [key, c] : t.odds) {
    auto [k, b] = key;
    j["odds"].push_back({{"k", k}, {"p", b.p}, {"q", b.q}, {"mult", c}});
  }
  j["shapes"] = ojson::array();
  for (const auto& [s, c] : t.shapes()) j["shapes"].push_back({{"shape", shape_name(s)}, {"mult", c}});
  return j;
}

}  // namespace bcx
