#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <string>

namespace metriq {

/// Exact element a + b*i of Q(i).
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return {0, 1}; }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, always a non-negative rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  /// Throws DivisionByZero.
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Arbitrary but fixed total order (real part, then imaginary part).
  friend std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b) {
    if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  GaussRational pow(long e) const;

  /// Text form accepted by the expression parser: "3/2", "-i", "(1/2 + 3*i)".
  std::string str() const;
  /// True when str() would need parentheses to be used as a factor.
  bool is_compound() const noexcept { return sgn(re_) != 0 && sgn(im_) != 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace metriq
