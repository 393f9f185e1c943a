#pragma once

#include <string>
#include <vector>

#include "liemm/gauss.hpp"

namespace liemm {

// Exact element of the cyclotomic field Q(zeta_m), stored in the power basis
// 1, z, ..., z^(phi(m)-1) modulo the m-th cyclotomic polynomial.  Operands from
// different fields are promoted to Q(zeta_lcm).  Needed for finite-group
// characters that are not Gaussian rational (e.g. Z_5).
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), c_{Rational(0)} {}
  Cyclotomic(Rational r) : m_(1), c_{std::move(r)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int v) : Cyclotomic(Rational(v)) {}       // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const GaussRational& z);

  // zeta_m^k
  static Cyclotomic zeta(int m, long k = 1);

  int field_order() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Real and imaginary parts are only exposed when the value is Gaussian.
  bool is_gaussian() const;
  GaussRational to_gauss() const;

  Cyclotomic conj() const;
  Cyclotomic inv() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inv(); }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::string str() const;

 private:
  Cyclotomic(int m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {}
  Cyclotomic promoted(int to) const;
  static Cyclotomic reduce(int m, std::vector<Rational> poly);
  Cyclotomic simplified() const;

  int m_;
  std::vector<Rational> c_;
};

inline Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }

// Integer coefficients (low degree first) of the m-th cyclotomic polynomial.
const std::vector<long>& cyclotomic_polynomial(int m);

}  // namespace liemm
