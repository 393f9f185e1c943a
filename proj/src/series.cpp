#include "liemm/series.hpp"

#include <algorithm>
#include <sstream>

namespace liemm {

EpsLaurent::EpsLaurent(GaussRational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

EpsLaurent::EpsLaurent(int lo, std::vector<GaussRational> coeffs, int hi)
    : lo_(lo), hi_(hi), c_(std::move(coeffs)) {
  if (hi_ < lo_ - 1 || (hi_ < lo_ && !c_.empty()))
    throw InsufficientOrder("empty window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (!is_exact() && static_cast<long>(lo_) + static_cast<long>(c_.size()) - 1 > hi_)
    c_.resize(static_cast<std::size_t>(hi_ - lo_ + 1));
  normalize();
}

EpsLaurent EpsLaurent::monomial(GaussRational c, int e) {
  EpsLaurent s;
  if (!c.is_zero()) {
    s.lo_ = e;
    s.c_.push_back(std::move(c));
  }
  return s;
}

EpsLaurent EpsLaurent::zero_through(int hi) {
  EpsLaurent s;
  s.lo_ = hi;
  s.hi_ = hi;
  return s;
}

void EpsLaurent::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    if (is_exact()) {
      lo_ = 0;
    } else {
      // known zero through hi_; keep lo_ <= hi_
      lo_ = hi_;
    }
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    lo_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

std::optional<int> EpsLaurent::valuation() const {
  if (c_.empty()) return std::nullopt;
  return lo_;
}

std::optional<int> EpsLaurent::top() const {
  if (c_.empty()) return std::nullopt;
  return lo_ + static_cast<int>(c_.size()) - 1;
}

GaussRational EpsLaurent::coeff(int e) const {
  if (e > hi_) throw InsufficientOrder("coefficient eps^" + std::to_string(e) + " beyond window top " + std::to_string(hi_));
  if (e < lo_) return {};
  std::size_t k = static_cast<std::size_t>(e - lo_);
  return k < c_.size() ? c_[k] : GaussRational{};
}

EpsLaurent EpsLaurent::truncate(int h) const {
  if (h >= hi_) return *this;
  EpsLaurent r;
  r.hi_ = h;
  if (c_.empty() || h < lo_) {
    r.lo_ = h;
    return r;
  }
  r.lo_ = lo_;
  r.c_.assign(c_.begin(), c_.begin() + std::min<long>(static_cast<long>(c_.size()), h - lo_ + 1));
  r.normalize();
  return r;
}

EpsLaurent EpsLaurent::shift(int k) const {
  if (is_exact_zero()) return *this;
  EpsLaurent r = *this;
  r.lo_ += k;
  if (!is_exact()) r.hi_ += k;
  return r;
}

EpsLaurent EpsLaurent::reparam(int t) const {
  if (t < 1) throw std::invalid_argument("reparametrization exponent must be positive");
  if (t == 1 || is_exact_zero()) return *this;
  EpsLaurent r;
  r.hi_ = is_exact() ? kExact : t * (hi_ + 1) - 1;
  if (c_.empty()) {
    r.lo_ = r.hi_;
    return r;
  }
  r.lo_ = lo_ * t;
  r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(t) + 1, GaussRational{});
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k * static_cast<std::size_t>(t)] = c_[k];
  return r;
}

EpsLaurent EpsLaurent::conj() const {
  EpsLaurent r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

EpsLaurent EpsLaurent::operator-() const {
  EpsLaurent r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

EpsLaurent EpsLaurent::scaled(const GaussRational& s) const {
  if (s.is_zero()) {
    // 0 * (known through hi) is exactly zero
    return EpsLaurent();
  }
  EpsLaurent r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

EpsLaurent& EpsLaurent::operator+=(const EpsLaurent& o) {
  int nlo = std::min(lo_, o.lo_);
  int nhi = std::min(hi_, o.hi_);
  if (o.c_.empty() && o.hi_ >= hi_) return *this;
  std::vector<GaussRational> out;
  auto ext = [&](const EpsLaurent& s) {
    return s.c_.empty() ? nlo - 1 : s.lo_ + static_cast<int>(s.c_.size()) - 1;
  };
  int top = std::max(ext(*this), ext(o));
  if (nhi < kExact) top = std::min(top, nhi);
  if (top >= nlo) out.assign(static_cast<std::size_t>(top - nlo + 1), GaussRational{});
  auto add = [&](const EpsLaurent& s) {
    for (std::size_t k = 0; k < s.c_.size(); ++k) {
      int e = s.lo_ + static_cast<int>(k);
      if (e > top) break;
      out[static_cast<std::size_t>(e - nlo)] += s.c_[k];
    }
  };
  add(*this);
  add(o);
  lo_ = nlo;
  hi_ = nhi;
  c_ = std::move(out);
  normalize();
  return *this;
}

EpsLaurent& EpsLaurent::operator-=(const EpsLaurent& o) { return *this += -o; }

namespace {

struct Window {
  int lo, hi;
};

Window product_window(const EpsLaurent& a, const EpsLaurent& b) {
  int lo = a.lo() + b.lo();
  int hi = std::min(win_add(a.lo(), b.hi()), win_add(b.lo(), a.hi()));
  return {lo, hi};
}

}  // namespace

EpsLaurent series_mul(const EpsLaurent& a, const EpsLaurent& b, int cap) {
  if (a.is_exact_zero() || b.is_exact_zero()) return EpsLaurent();
  Window w = product_window(a, b);
  if (w.hi < w.lo - 1)
    throw InsufficientOrder("product window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]");
  w.hi = std::min(w.hi, cap);
  if (w.hi < w.lo) return EpsLaurent::zero_through(w.hi);
  const auto& ac = a.raw_coeffs();
  const auto& bc = b.raw_coeffs();
  if (ac.empty() || bc.empty() || w.hi < w.lo) return EpsLaurent::zero_through(w.hi);
  int top = a.lo() + b.lo() + static_cast<int>(ac.size() + bc.size()) - 2;
  if (w.hi < EpsLaurent::kExact) top = std::min(top, w.hi);
  std::vector<GaussRational> out(static_cast<std::size_t>(top - w.lo + 1));
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    int ei = static_cast<int>(i);
    for (std::size_t j = 0; j < bc.size(); ++j) {
      int e = ei + static_cast<int>(j);
      if (e > top - w.lo) break;
      fma_into(out[static_cast<std::size_t>(e)], ac[i], bc[j]);
    }
  }
  return EpsLaurent(w.lo, std::move(out), w.hi);
}

EpsLaurent operator*(const EpsLaurent& a, const EpsLaurent& b) { return series_mul(a, b); }

EpsLaurent& EpsLaurent::operator*=(const EpsLaurent& o) { return *this = series_mul(*this, o); }

void series_fma(EpsLaurent& acc, const EpsLaurent& a, const EpsLaurent& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) return;
  acc += series_mul(a, b, acc.hi());
}

EpsLaurent series_inv(const EpsLaurent& a, int rel_order) {
  auto v = a.valuation();
  if (!v) throw std::domain_error("inverse of a series that is identically zero on its window");
  const auto& c = a.raw_coeffs();
  GaussRational lead_inv = c[0].inv();
  if (a.is_exact() && c.size() == 1) return EpsLaurent::monomial(lead_inv, -*v);
  int rel;
  if (a.is_exact()) {
    if (rel_order < 0) throw InsufficientOrder("inverse of an exact non-monomial series needs an explicit order");
    rel = rel_order;
  } else {
    rel = a.hi() - *v;
    if (rel_order >= 0) rel = std::min(rel, rel_order);
  }
  std::vector<GaussRational> b(static_cast<std::size_t>(rel) + 1);
  b[0] = lead_inv;
  for (int k = 1; k <= rel; ++k) {
    GaussRational s;
    for (int j = 1; j <= k && static_cast<std::size_t>(j) < c.size(); ++j)
      fma_into(s, c[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(k - j)]);
    b[static_cast<std::size_t>(k)] = -(s * lead_inv);
  }
  return EpsLaurent(-*v, std::move(b), -*v + rel);
}

bool EpsLaurent::agrees_with(const EpsLaurent& o) const {
  int h = std::min(hi_, o.hi_);
  int l = std::min(lo_, o.lo_);
  int t1 = c_.empty() ? l : lo_ + static_cast<int>(c_.size());
  int t2 = o.c_.empty() ? l : o.lo_ + static_cast<int>(o.c_.size());
  int top = std::max(t1, t2);
  if (h < kExact) top = std::min(top, h);
  for (int e = l; e <= top; ++e)
    if (!(coeff(e) == o.coeff(e))) return false;
  return true;
}

std::string EpsLaurent::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    int e = lo_ + static_cast<int>(k);
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str() << ")";
    if (e) os << "*e^" << e;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(e^" << hi_ + 1 << ")";
  return os.str();
}

}  // namespace liemm
