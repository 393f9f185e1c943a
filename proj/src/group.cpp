#include "liemm/group.hpp"

#include <algorithm>
#include <cmath>

namespace liemm {

TableGroup::TableGroup(std::vector<std::vector<int>> table, std::uint64_t seed) : t_(std::move(table)) {
  int n = size();
  if (n == 0) throw std::invalid_argument("empty group table");
  for (const auto& row : t_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group table not closed");
  }
  e_ = -1;
  for (int a = 0; a < n && e_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = t_[a][b] == b && t_[b][a] == b;
    if (ok) e_ = a;
  }
  if (e_ < 0) throw std::invalid_argument("group table has no identity");
  inv_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t_[a][b] == e_ && t_[b][a] == e_) inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0) throw std::invalid_argument("element without inverse: " + std::to_string(a));
  auto assoc = [&](int a, int b, int c) {
    if (t_[t_[a][b]][c] != t_[a][t_[b][c]])
      throw std::invalid_argument("group table not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                  "," + std::to_string(c) + ")");
  };
  if (static_cast<long>(n) * n * n <= 1000000) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    Rng g(seed);
    for (int k = 0; k < 100000; ++k) {
      auto a = static_cast<int>(draw_below(g, n)), b = static_cast<int>(draw_below(g, n));
      assoc(a, b, static_cast<int>(draw_below(g, n)));
    }
  }
}

TableGroup TableGroup::cyclic(int m) { return abelian({m}); }

TableGroup TableGroup::abelian(const std::vector<int>& orders) {
  int n = 1;
  for (int o : orders) {
    if (o < 1) throw std::invalid_argument("cyclic factor order must be positive");
    n *= o;
  }
  auto digits = [&](int x) {
    std::vector<int> d;
    for (int o : orders) {
      d.push_back(x % o);
      x /= o;
    }
    return d;
  };
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    auto da = digits(a);
    for (int b = 0; b < n; ++b) {
      auto db = digits(b);
      int v = 0, radix = 1;
      for (std::size_t k = 0; k < orders.size(); ++k) {
        v += (da[k] + db[k]) % orders[k] * radix;
        radix *= orders[k];
      }
      t[a][b] = v;
    }
  }
  return TableGroup(std::move(t));
}

Mat<FloatComplex> float_inverse(const Mat<FloatComplex>& a) {
  std::size_t n = a.rows();
  Mat<FloatComplex> m = a, r = Mat<FloatComplex>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (std::abs(m(p, k)) < 1e-300) throw std::domain_error("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(p, j), m(k, j));
      std::swap(r(p, j), r(k, j));
    }
    FloatComplex iv = 1.0 / m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= iv;
      r(k, j) *= iv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      FloatComplex f = m(i, k);
      if (f == FloatComplex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        r(i, j) -= f * r(k, j);
      }
    }
  }
  return r;
}

Mat<FloatComplex> FloatMatGroup::inv(const Elem& a) const { return float_inverse(a); }

std::optional<int> family_difference(const SeriesMat& a, const SeriesMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<int>::min();
  std::optional<int> best;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    EpsLaurent d = a.data()[k] - b.data()[k];
    if (auto v = d.valuation(); v && (!best || *v < *best)) best = v;
  }
  return best;
}

FamilyList::FamilyList(std::vector<SeriesMat> f, const std::string& name) : fam(std::move(f)) {
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!family_difference(fam[i], fam[j]))
        throw DuplicateFamily(name + "[" + std::to_string(j) + "] and " + name + "[" + std::to_string(i) +
                              "] agree through order " + std::to_string(std::min(min_hi(fam[i]), min_hi(fam[j]))));
  inv.reserve(fam.size());
  for (const auto& m : fam) inv.push_back(series_mat_inv(m));
}

}  // namespace liemm
