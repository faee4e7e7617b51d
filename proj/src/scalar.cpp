#include "bicomplex/scalar.hpp"

#include <cctype>

namespace bcx {

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  std::string s = re_.get_str();
  if (sgn(im_) > 0) s += '+';
  s += im_.get_str();
  s += "*i";
  return s;
}

namespace {

mpq_class parse_rational(std::string_view tok, std::string_view whole) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  std::string_view body = tok;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  bool slash = false, digit = false;
  for (size_t k = 0; k < body.size(); ++k) {
    char c = body[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '/' && !slash && digit && k + 1 < body.size()) {
      slash = true;
      digit = false;
    } else {
      throw ParseError("bad scalar '" + std::string(whole) + "'");
    }
  }
  if (!digit) throw ParseError("bad scalar '" + std::string(whole) + "'");
  mpq_class q;
  if (q.set_str(std::string(tok), 10) != 0)
    throw ParseError("bad scalar '" + std::string(whole) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

mpq_class parse_imag(std::string_view tok, std::string_view whole) {
  // tok ends with 'i'
  tok.remove_suffix(1);
  if (!tok.empty() && tok.back() == '*') tok.remove_suffix(1);
  if (tok.empty() || tok == "+") return 1;
  if (tok == "-") return -1;
  return parse_rational(tok, whole);
}

}  // namespace

Scalar Scalar::parse(std::string_view in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty scalar");
  std::string_view v(s);
  if (v.back() != 'i') return Scalar(parse_rational(v, in));
  size_t split = std::string_view::npos;
  for (size_t k = v.size(); k-- > 1;) {
    if (v[k] == '+' || v[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return Scalar(mpq_class(0), parse_imag(v, in));
  return Scalar(parse_rational(v.substr(0, split), in), parse_imag(v.substr(split), in));
}

}  // namespace bcx
