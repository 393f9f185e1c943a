#include "liemm/gauss.hpp"

#include <stdexcept>

namespace liemm {

GaussRational GaussRational::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero Gaussian rational");
  if (im.is_zero()) return GaussRational(re.inv());
  Rational n = norm2();
  return {re / n, -im / n};
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (o.im.is_zero()) {
    re *= o.re;
    if (!im.is_zero()) im *= o.re;
    return *this;
  }
  if (im.is_zero()) {
    im = re * o.im;
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

void fma_into(GaussRational& acc, const GaussRational& a, const GaussRational& b) {
  if (a.is_zero() || b.is_zero()) return;
  // raw mpq ops avoid temporaries in the hot series-product loops
  mpq_class t;
  bool ar = a.im.is_zero(), br = b.im.is_zero();
  mpq_mul(t.get_mpq_t(), a.re.get().get_mpq_t(), b.re.get().get_mpq_t());
  mpq_ptr accre = acc.re.raw().get_mpq_t();
  mpq_ptr accim = acc.im.raw().get_mpq_t();
  mpq_add(accre, accre, t.get_mpq_t());
  if (ar && br) return;
  if (!ar && !br) {
    mpq_mul(t.get_mpq_t(), a.im.get().get_mpq_t(), b.im.get().get_mpq_t());
    mpq_sub(accre, accre, t.get_mpq_t());
  }
  if (!br) {
    mpq_mul(t.get_mpq_t(), a.re.get().get_mpq_t(), b.im.get().get_mpq_t());
    mpq_add(accim, accim, t.get_mpq_t());
  }
  if (!ar) {
    mpq_mul(t.get_mpq_t(), a.im.get().get_mpq_t(), b.re.get().get_mpq_t());
    mpq_add(accim, accim, t.get_mpq_t());
  }
}

std::string GaussRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "i";
  std::string s = re.str();
  if (im.sign() > 0) s += "+";
  return s + im.str() + "i";
}

}  // namespace liemm
