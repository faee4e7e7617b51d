#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bcx {

// Gaussian rational re + im*i with exact GMP rationals.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}
  Scalar(int v) : re_(v) {}
  Scalar(const mpq_class& re) : re_(re) {}
  Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

  static Scalar i() { return Scalar(0, 1); }
  static Scalar frac(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return is_real() ? *this : Scalar(re_, -im_); }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    if (!o.is_real()) im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (!o.is_real()) im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (o.is_real()) {
      re_ /= o.re_;
      if (!is_real()) im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm2();
    Scalar c = o.conj();
    *this *= c;
    re_ /= n;
    im_ /= n;
    return *this;
  }
  Scalar inv() const { return Scalar(1) / *this; }

  // this -= a*b without building temporaries on the real path
  void sub_mul(const Scalar& a, const Scalar& b) {
    if (a.is_real() && b.is_real()) {
      mpq_class t = a.re_ * b.re_;
      re_ -= t;
      return;
    }
    *this -= a * b;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;
  static Scalar parse(std::string_view s);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bcx
