#pragma once

#include <string>

#include "liemm/rational.hpp"

namespace liemm {

// Exact complex rational re + i*im.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(int v) : re(v) {}       // NOLINT(google-explicit-constructor)
  GaussRational(long v) : re(v) {}      // NOLINT(google-explicit-constructor)
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_one() const { return im.is_zero() && re.is_one(); }

  GaussRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussRational inv() const;

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    if (!o.im.is_zero()) im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inv(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  // "p/q" when real, "a+bi" style otherwise.
  std::string str() const;
  std::size_t hash() const { return re.hash() * 31u + im.hash(); }
};

inline GaussRational conj(const GaussRational& z) { return z.conj(); }

// acc += a*b without building the intermediate product object.
void fma_into(GaussRational& acc, const GaussRational& a, const GaussRational& b);

inline std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

}  // namespace liemm

template <>
struct std::hash<liemm::GaussRational> {
  std::size_t operator()(const liemm::GaussRational& z) const { return z.hash(); }
};
