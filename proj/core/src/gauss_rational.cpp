#include "metriq/gauss_rational.hpp"

#include "metriq/errors.hpp"

namespace metriq {

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

GaussRational GaussRational::pow(long e) const {
  if (e < 0) return GaussRational(1) / pow(-e);
  GaussRational result(1);
  GaussRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {
std::string rat_str(const mpq_class& q) { return q.get_str(); }
}  // namespace

std::string GaussRational::str() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return rat_str(re_);
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = rat_str(im_) + "*i";
  }
  if (!has_re) return im_part;
  std::string out = "(" + rat_str(re_);
  if (im_part.front() == '-') {
    out += " - " + im_part.substr(1);
  } else {
    out += " + " + im_part;
  }
  return out + ")";
}

}  // namespace metriq
