#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liemm {

// Arbitrary precision rational, always in lowest terms with positive
// denominator (GMP keeps mpq canonical after every arithmetic op).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : v_(v) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v) : v_(static_cast<long>(v)) {}  // NOLINT
  Rational(unsigned long v) : v_(v) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpz_class& z) : v_(z) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view s);

  std::string str() const { return v_.get_str(); }
  const mpq_class& get() const { return v_; }
  mpq_class& raw() { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  Rational inv() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class v_;
};

inline Rational conj(const Rational& r) { return r; }
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational pow(const Rational& r, long e);

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

mpz_class factorial(unsigned long n);
mpz_class binomial(unsigned long n, unsigned long k);
// Natural log of a positive big integer, accurate to double precision.
double log_mpz(const mpz_class& z);

}  // namespace liemm

template <>
struct std::hash<liemm::Rational> {
  std::size_t operator()(const liemm::Rational& r) const { return r.hash(); }
};
