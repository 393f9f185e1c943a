#include "liemm/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace liemm {

namespace {

std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    long c = num[k];
    q[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (num[j] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

std::vector<Rational> mul_poly(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int m) {
  static std::map<int, std::vector<long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<long> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_exact_div(p, cyclotomic_polynomial(d));
  return cache.emplace(m, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(const GaussRational& z) {
  if (z.im.is_zero()) {
    m_ = 1;
    c_ = {z.re};
  } else {
    // Q(zeta_4): basis 1, i
    m_ = 4;
    c_ = {z.re, z.im};
  }
}

Cyclotomic Cyclotomic::zeta(int m, long k) {
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  long e = ((k % m) + m) % m;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
  poly[static_cast<std::size_t>(e)] = Rational(1);
  return reduce(m, std::move(poly)).simplified();
}

Cyclotomic Cyclotomic::reduce(int m, std::vector<Rational> poly) {
  const auto& phi = cyclotomic_polynomial(m);
  std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k].is_zero()) continue;
    Rational c = poly[k];
    for (std::size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0) poly[k - deg + j] -= c * Rational(phi[j]);
  }
  poly.resize(deg);
  return Cyclotomic(m, std::move(poly));
}

Cyclotomic Cyclotomic::promoted(int to) const {
  if (to == m_) return *this;
  if (to % m_) throw std::logic_error("bad cyclotomic promotion");
  int step = to / m_;
  std::vector<Rational> poly(static_cast<std::size_t>(step) * c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) poly[k * step] = c_[k];
  return reduce(to, std::move(poly));
}

Cyclotomic Cyclotomic::simplified() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return *this;
  return Cyclotomic(c_.empty() ? Rational(0) : c_[0]);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclotomic::is_rational() const { return simplified().m_ == 1; }

bool Cyclotomic::is_gaussian() const {
  Cyclotomic two(2);
  Cyclotomic re = (*this + conj()) / two;
  Cyclotomic im = (*this - conj()) / (two * Cyclotomic(GaussRational::i()));
  return re.is_rational() && im.is_rational();
}

GaussRational Cyclotomic::to_gauss() const {
  Cyclotomic two(2);
  Cyclotomic re = ((*this + conj()) / two).simplified();
  Cyclotomic im = ((*this - conj()) / (two * Cyclotomic(GaussRational::i()))).simplified();
  if (re.m_ != 1 || im.m_ != 1) throw std::domain_error("cyclotomic value is not Gaussian rational");
  return {re.c_[0], im.c_[0]};
}

Cyclotomic Cyclotomic::conj() const {
  if (m_ <= 2) return *this;
  std::vector<Rational> poly(static_cast<std::size_t>(m_));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::size_t e = (static_cast<std::size_t>(m_) - k) % static_cast<std::size_t>(m_);
    poly[e] += c_[k];
  }
  return reduce(m_, std::move(poly));
}

Cyclotomic Cyclotomic::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic");
  if (m_ == 1) return Cyclotomic(c_[0].inv());
  // multiplication-by-this matrix on the power basis; solve M x = e_0
  std::size_t d = c_.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> basis(j + 1);
    basis[j] = Rational(1);
    Cyclotomic col = reduce(m_, mul_poly(c_, basis));
    for (std::size_t i = 0; i < d; ++i) a[i][j] = col.c_[i];
  }
  a[0][d] = Rational(1);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && a[piv][col].is_zero()) ++piv;
    if (piv == d) throw std::logic_error("singular cyclotomic multiplication matrix");
    std::swap(a[piv], a[col]);
    Rational iv = a[col][col].inv();
    for (std::size_t j = col; j <= d; ++j) a[col][j] *= iv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j <= d; ++j) a[i][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = a[i][d];
  return Cyclotomic(m_, std::move(x)).simplified();
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  int l = std::lcm(m_, o.m_);
  Cyclotomic a = promoted(l), b = o.promoted(l);
  for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
  return *this = a.simplified();
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  int l = std::lcm(m_, o.m_);
  Cyclotomic a = promoted(l), b = o.promoted(l);
  return *this = reduce(l, mul_poly(a.c_, b.c_)).simplified();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

std::string Cyclotomic::str() const {
  if (m_ == 1) return c_[0].str();
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].str() + ")";
    if (k) s += "*z" + std::to_string(m_) + "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace liemm
