#include <algorithm>
#include <bit>
#include <cctype>

#include "bicomplex/models.hpp"

namespace bcx {

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int count = 0;
  for (Mask r = b; r; r &= r - 1) {
    int y = std::countr_zero(r);
    Mask above = y >= 31 ? 0 : ~((Mask(1) << (y + 1)) - 1);
    count += std::popcount(a & above);
  }
  return count % 2 ? -1 : 1;
}

void add_to(Form& f, Mask m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = f.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) f.erase(it);
  }
}

Form wedge(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      int s = wedge_sign(ma, mb);
      if (s) add_to(out, ma | mb, Scalar(s) * ca * cb);
    }
  return out;
}

LieModel::LieModel(int n, std::string gen_name, std::vector<Form> dphi)
    : n_(n), name_(std::move(gen_name)), dphi_(std::move(dphi)) {
  if (n_ < 1 || n_ > 8) throw InvalidComplex("Lie model dimension must be between 1 and 8");
  dphi_.resize(n_);
  build_basis();
}

Bidegree LieModel::bidegree(Mask m) const {
  return {std::popcount(m & phi_top()), std::popcount(m >> n_)};
}

Mask LieModel::conj_mask(Mask m, int* sign) const {
  Mask i = m & phi_top(), j = m >> n_;
  if (sign) *sign = (std::popcount(i) * std::popcount(j)) % 2 ? -1 : 1;
  return j | (i << n_);
}

Form LieModel::conj(const Form& f) const {
  Form out;
  for (const auto& [m, c] : f) {
    int s;
    Mask cm = conj_mask(m, &s);
    add_to(out, cm, Scalar(s) * c.conj());
  }
  return out;
}

Form LieModel::d_generator(int bit) const {
  if (bit < n_) return dphi_[bit];
  return conj(dphi_[bit - n_]);
}

Form LieModel::d(Mask m) const {
  Form out;
  int t = 0;
  for (Mask r = m; r; r &= r - 1, ++t) {
    int bit = std::countr_zero(r);
    Mask left = m & ((Mask(1) << bit) - 1);
    Mask right = m & ~((Mask(1) << (bit + 1)) - 1);
    for (const auto& [g, c] : d_generator(bit)) {
      int s1 = wedge_sign(left, g);
      if (!s1) continue;
      int s2 = wedge_sign(left | g, right);
      if (!s2) continue;
      int s = (t % 2 ? -1 : 1) * s1 * s2;
      add_to(out, left | g | right, Scalar(s) * c);
    }
  }
  return out;
}

Form LieModel::d(const Form& f) const {
  Form out;
  for (const auto& [m, c] : f)
    for (const auto& [m2, c2] : d(m)) add_to(out, m2, c * c2);
  return out;
}

Form LieModel::del(const Form& f) const {
  Form out;
  for (const auto& [m, c] : f) {
    Bidegree b = bidegree(m);
    for (const auto& [m2, c2] : d(m))
      if (bidegree(m2).p == b.p + 1) add_to(out, m2, c * c2);
  }
  return out;
}

Form LieModel::dbar(const Form& f) const {
  Form out;
  for (const auto& [m, c] : f) {
    Bidegree b = bidegree(m);
    for (const auto& [m2, c2] : d(m))
      if (bidegree(m2).q == b.q + 1) add_to(out, m2, c * c2);
  }
  return out;
}

void LieModel::build_basis() {
  index_.assign(std::size_t(1) << (2 * n_), -1);
  auto tuple = [&](Mask m) {
    std::vector<int> t;
    for (int k = 0; k < n_; ++k)
      if (m >> k & 1) t.push_back(k);
    return t;
  };
  for (Mask m = 0; m <= top(); ++m) basis_[bidegree(m)].push_back(m);
  for (auto& [b, v] : basis_) {
    std::sort(v.begin(), v.end(), [&](Mask x, Mask y) {
      auto xi = tuple(x & phi_top()), yi = tuple(y & phi_top());
      if (xi != yi) return xi < yi;
      return tuple(x >> n_) < tuple(y >> n_);
    });
    for (size_t k = 0; k < v.size(); ++k) index_[v[k]] = static_cast<int>(k);
  }
}

const std::vector<Mask>& LieModel::basis(Bidegree b) const {
  static const std::vector<Mask> empty;
  auto it = basis_.find(b);
  return it == basis_.end() ? empty : it->second;
}

int LieModel::index(Mask m) const { return index_.at(m); }

Vec LieModel::to_vec(const Form& f, Bidegree b) const {
  Vec v(basis(b).size());
  for (const auto& [m, c] : f) {
    if (bidegree(m) != b) throw InvalidComplex("form component outside bidegree (" + b.key() + ")");
    v[index(m)] = c;
  }
  return v;
}

Form LieModel::from_vec(const Vec& v, Bidegree b) const {
  Form f;
  const auto& bs = basis(b);
  for (size_t k = 0; k < v.size(); ++k) add_to(f, bs[k], v[k]);
  return f;
}

bool LieModel::parallelisable() const {
  for (const auto& f : dphi_)
    for (const auto& [m, c] : f)
      if (bidegree(m) != Bidegree{2, 0}) return false;
  return true;
}

Scalar LieModel::bracket_constant(int i, int j, int k) const {
  if (i == j) return Scalar();
  int lo = std::min(i, j), hi = std::max(i, j);
  Mask m = (Mask(1) << lo) | (Mask(1) << hi);
  auto it = dphi_[k].find(m);
  if (it == dphi_[k].end()) return Scalar();
  // phi_k([theta_i, theta_j]) = -dphi_k(theta_i, theta_j)
  return i < j ? -it->second : it->second;
}

std::vector<Vec> LieModel::centre() const {
  // x in centre iff sum_i x_i c^k_{ij} = 0 for all j, k
  Matrix m(n_ * n_, n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i) m(j * n_ + k, i) = bracket_constant(i, j, k);
  return kernel(m).rows();
}

std::string LieModel::mono_name(Mask m) const {
  if (m == 0) return "1";
  std::string s;
  for (int bit = 0; bit < 2 * n_; ++bit) {
    if (!(m >> bit & 1)) continue;
    if (!s.empty()) s += '^';
    if (bit >= n_) s += '~';
    s += name_ + std::to_string(bit % n_ + 1);
  }
  return s;
}

std::string LieModel::form_str(const Form& f) const {
  if (f.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : f) {
    std::string cs = c.str();
    if (!s.empty()) s += " + ";
    if (c.is_one())
      s += mono_name(m);
    else
      s += (c.is_real() ? cs : "(" + cs + ")") + "*" + mono_name(m);
  }
  return s;
}

DoubleComplex LieModel::complex() const {
  DoubleComplex a;
  a.n = n_;
  for (const auto& [b, v] : basis_) a.set_dim(b, static_cast<int>(v.size()));
  a.enable_conj();
  for (const auto& [b, v] : basis_) {
    Bidegree b1{b.p + 1, b.q}, b2{b.p, b.q + 1};
    Matrix m1(a.dim(b1), a.dim(b)), m2(a.dim(b2), a.dim(b)), c(a.dim(b.swapped()), a.dim(b));
    for (size_t j = 0; j < v.size(); ++j) {
      for (const auto& [m, x] : d(v[j])) {
        Bidegree t = bidegree(m);
        if (t == b1)
          m1(index(m), static_cast<int>(j)) = x;
        else if (t == b2)
          m2(index(m), static_cast<int>(j)) = x;
        else
          throw IntegrabilityViolation("d leaves the (1,0)+(0,1) bidegrees on " + mono_name(v[j]));
      }
      int s;
      Mask cm = conj_mask(v[j], &s);
      c(index(cm), static_cast<int>(j)) = s;
    }
    a.set_d1(b, m1);
    a.set_d2(b, m2);
    a.set_conj(b, c);
  }
  return a;
}

DoubleComplex exterior_bicomplex(const LieModel& m) { return m.complex(); }

namespace {

class DslParser {
 public:
  explicit DslParser(const std::string& text) : text_(text) {}

  LieModel run() {
    struct Eq {
      int k;
      std::vector<std::pair<Scalar, std::vector<std::pair<bool, int>>>> terms;
      int line, col;
    };
    std::vector<Eq> eqs;
    int n = 0;
    while (true) {
      skip_space_and_separators();
      if (pos_ >= text_.size()) break;
      Eq e;
      e.line = line_;
      e.col = col();
      expect('d');
      std::string nm = ident();
      check_name(nm);
      e.k = integer();
      if (e.k < 1) fail("generator index must be >= 1");
      n = std::max(n, e.k);
      skip_inline_space();
      expect('=');
      bool first = true;
      while (true) {
        skip_inline_space();
        if (at_end_of_statement()) {
          if (first) fail("missing right-hand side");
          break;
        }
        Scalar sign(1);
        if (peek() == '+' || peek() == '-') {
          sign = get() == '-' ? Scalar(-1) : Scalar(1);
          skip_inline_space();
        } else if (!first) {
          fail("expected '+' or '-'");
        }
        first = false;
        if (peek() == '0' && !std::isdigit(static_cast<unsigned char>(peek(1))) && peek(1) != '/') {
          get();
          continue;
        }
        Scalar coef(1);
        std::vector<std::pair<bool, int>> factors;
        if (peek() == '(') {
          get();
          size_t close = text_.find(')', pos_);
          if (close == std::string::npos) fail("unclosed '('");
          try {
            coef = Scalar::parse(text_.substr(pos_, close - pos_));
          } catch (const ParseError& ex) {
            fail(ex.what());
          }
          advance_to(close + 1);
          skip_inline_space();
          expect('*');
          skip_inline_space();
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
          long num = integer();
          long den = 1;
          if (peek() == '/') {
            get();
            den = integer();
            if (den == 0) fail("zero denominator");
          }
          coef = Scalar::frac(num, den);
          skip_inline_space();
          expect('*');
          skip_inline_space();
        } else if (peek() == 'i' && !std::isalpha(static_cast<unsigned char>(peek(1)))) {
          get();
          coef = Scalar::i();
          skip_inline_space();
          expect('*');
          skip_inline_space();
        }
        while (true) {
          bool bar = false;
          if (peek() == '~') {
            get();
            bar = true;
          }
          std::string fn = ident();
          check_name(fn);
          int idx = integer();
          if (idx < 1) fail("generator index must be >= 1");
          n = std::max(n, idx);
          factors.push_back({bar, idx - 1});
          skip_inline_space();
          if (peek() != '^') break;
          get();
          skip_inline_space();
        }
        e.terms.push_back({sign * coef, factors});
      }
      eqs.push_back(std::move(e));
    }
    if (n == 0) throw ParseError("no structure equations");
    std::vector<Form> dphi(n);
    std::vector<bool> seen(n, false);
    for (const auto& e : eqs) {
      if (seen[e.k - 1]) throw ParseError("line " + std::to_string(e.line) + ": duplicate equation for d" + name_ + std::to_string(e.k));
      seen[e.k - 1] = true;
      for (const auto& [c, fs] : e.terms) {
        if (fs.size() != 2)
          throw ParseError("line " + std::to_string(e.line) + ": each term of d" + name_ + std::to_string(e.k) + " must be a product of two generators");
        Form f{{Mask(0), Scalar(1)}};
        for (auto [bar, idx] : fs) f = wedge(f, Form{{Mask(1) << (idx + (bar ? n : 0)), Scalar(1)}});
        for (const auto& [m, x] : f) add_to(dphi[e.k - 1], m, c * x);
      }
    }
    for (int k = 0; k < n; ++k)
      for (const auto& [m, c] : dphi[k])
        if (std::popcount(m & ((Mask(1) << n) - 1)) == 0) {
          LieModel tmp(n, name_, {});
          throw IntegrabilityViolation("term " + tmp.mono_name(m) + " of type (0,2) in d" + name_ + std::to_string(k + 1));
        }
    LieModel model(n, name_, dphi);
    for (int k = 0; k < n; ++k) {
      Form dd = model.d(model.d_generator(k));
      if (!dd.empty()) {
        Mask m = dd.begin()->first;
        std::string triple;
        for (int bit = 0; bit < 2 * n; ++bit)
          if (m >> bit & 1) triple += (triple.empty() ? "" : ",") + model.mono_name(Mask(1) << bit);
        throw JacobiViolation("d^2 " + name_ + std::to_string(k + 1) + " != 0; first failing triple (" + triple + ")");
      }
    }
    return model;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  size_t line_start_ = 0;
  std::string name_;

  int col() const { return static_cast<int>(pos_ - line_start_) + 1; }
  char peek(size_t off = 0) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      line_start_ = pos_;
    }
    return c;
  }
  void advance_to(size_t p) {
    while (pos_ < p) get();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(col()) + ": " + msg);
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  void skip_inline_space() {
    while (peek() == ' ' || peek() == '\t' || peek() == '\r') get();
  }
  void skip_space_and_separators() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
        get();
      } else if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }
  bool at_end_of_statement() const {
    char c = peek();
    return c == '\0' || c == '\n' || c == ';' || c == '#';
  }
  std::string ident() {
    std::string s;
    while (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') s += get();
    if (s.empty()) fail("expected a generator name");
    return s;
  }
  long integer() {
    std::string s;
    while (std::isdigit(static_cast<unsigned char>(peek()))) s += get();
    if (s.empty()) fail("expected an integer");
    return std::stol(s);
  }
  void check_name(const std::string& nm) {
    if (name_.empty())
      name_ = nm;
    else if (nm != name_)
      fail("generator name '" + nm + "' differs from '" + name_ + "'");
  }
};

}  // namespace

LieModel parse_structure_equations(const std::string& text) { return DslParser(text).run(); }

}  // namespace bcx
