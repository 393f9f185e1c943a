#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liemm/gauss.hpp"

namespace liemm {

struct InsufficientOrder : std::runtime_error {
  explicit InsufficientOrder(const std::string& what)
      : std::runtime_error("insufficient truncation order: " + what) {}
};

// Truncated Laurent series in a real parameter eps with Gaussian-rational
// coefficients.  The value is known exactly on the window [lo, hi]:
// coefficients below lo are zero, coefficients above hi are unknown (never
// assumed zero).  hi == kExact marks a series known to all orders (a Laurent
// polynomial).  After normalization lo is the valuation, capped at hi, so a
// series known to vanish through hi is stored with lo == hi and no terms.
class EpsLaurent {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  EpsLaurent() = default;  // exact zero
  EpsLaurent(GaussRational c);  // NOLINT(google-explicit-constructor) exact constant
  EpsLaurent(Rational c) : EpsLaurent(GaussRational(std::move(c))) {}  // NOLINT
  EpsLaurent(int c) : EpsLaurent(GaussRational(c)) {}  // NOLINT
  // coeffs[k] is the coefficient of eps^(lo+k); hi < lo-1 is rejected.
  EpsLaurent(int lo, std::vector<GaussRational> coeffs, int hi);

  static EpsLaurent monomial(GaussRational c, int e);
  // 0 + O(eps^(hi+1))
  static EpsLaurent zero_through(int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool is_exact() const { return hi_ >= kExact; }
  bool is_exact_zero() const { return is_exact() && c_.empty(); }
  // every known coefficient is zero
  bool known_zero() const { return c_.empty(); }
  // lowest exponent with a nonzero known coefficient
  std::optional<int> valuation() const;
  // highest stored exponent with a nonzero coefficient
  std::optional<int> top() const;
  GaussRational coeff(int e) const;
  const std::vector<GaussRational>& raw_coeffs() const { return c_; }

  EpsLaurent truncate(int hi) const;
  EpsLaurent shift(int k) const;    // times eps^k
  EpsLaurent reparam(int t) const;  // eps -> eps^t
  EpsLaurent conj() const;          // eps is real: coefficientwise

  EpsLaurent operator-() const;
  EpsLaurent& operator+=(const EpsLaurent& o);
  EpsLaurent& operator-=(const EpsLaurent& o);
  EpsLaurent& operator*=(const EpsLaurent& o);
  friend EpsLaurent operator+(EpsLaurent a, const EpsLaurent& b) { return a += b; }
  friend EpsLaurent operator-(EpsLaurent a, const EpsLaurent& b) { return a -= b; }
  friend EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b);
  EpsLaurent scaled(const GaussRational& s) const;

  // Structural equality: same window top and same coefficients.
  friend bool operator==(const EpsLaurent& a, const EpsLaurent& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  // Equal on the common window [.., min(hi)].
  bool agrees_with(const EpsLaurent& o) const;

  std::string str() const;

 private:
  void normalize();

  int lo_ = 0;
  int hi_ = kExact;
  std::vector<GaussRational> c_;
};

inline EpsLaurent conj(const EpsLaurent& s) { return s.conj(); }

// Product truncated at cap (cap >= the natural window is a no-op).
EpsLaurent series_mul(const EpsLaurent& a, const EpsLaurent& b, int cap = EpsLaurent::kExact);
// acc += a*b, windows combined as for a sum.
void series_fma(EpsLaurent& acc, const EpsLaurent& a, const EpsLaurent& b);

// Multiplicative inverse.  For a truncated input the window follows from
// the input window; an exact non-monomial input needs rel_order (number of
// correction terms kept beyond the leading one).
EpsLaurent series_inv(const EpsLaurent& a, int rel_order = -1);

inline std::ostream& operator<<(std::ostream& os, const EpsLaurent& s) { return os << s.str(); }

// Saturating exponent arithmetic for window bookkeeping.
inline int win_add(int a, int b) {
  if (a >= EpsLaurent::kExact || b >= EpsLaurent::kExact) return EpsLaurent::kExact;
  long s = static_cast<long>(a) + b;
  if (s >= EpsLaurent::kExact) return EpsLaurent::kExact;
  return static_cast<int>(s);
}

}  // namespace liemm
