#include "liemm/rational.hpp"

#include <cmath>

namespace liemm {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, 1);
  v_ /= den;
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
  std::string t(s);
  auto ws = t.find_first_not_of(" \t");
  if (ws == std::string::npos) throw std::invalid_argument("empty rational literal");
  t = t.substr(ws);
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos)
    throw std::invalid_argument("bad rational literal: " + std::string(s));
  if (t[0] == '+') t.erase(0, 1);
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(s));
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  // low limbs of numerator and denominator are enough for bucketing
  std::size_t h = mpz_size(v_.get_num_mpz_t()) ? mpz_getlimbn(v_.get_num_mpz_t(), 0) : 0;
  h ^= static_cast<std::size_t>(sgn(v_)) * 0x9e3779b97f4a7c15ULL;
  std::size_t d = mpz_getlimbn(v_.get_den_mpz_t(), 0);
  return h * 1000003u ^ (d + 0x7f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational pow(const Rational& r, long e) {
  if (e < 0) return pow(r.inv(), -e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), r.get().get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.get().get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

double log_mpz(const mpz_class& z) {
  if (z <= 0) throw std::domain_error("log of nonpositive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace liemm
