#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "liemm/series_matrix.hpp"

namespace testutil {

using namespace liemm;

inline Rational rand_rat(std::mt19937_64& g, int lim = 5) {
  std::uniform_int_distribution<int> num(-lim, lim), den(1, lim);
  return Rational(num(g), den(g));
}

inline GaussRational rand_gauss(std::mt19937_64& g, int lim = 5) { return {rand_rat(g, lim), rand_rat(g, lim)}; }

inline EpsLaurent rand_series(std::mt19937_64& g, int lo, int hi) {
  std::vector<GaussRational> c(static_cast<std::size_t>(hi - lo + 1));
  for (auto& x : c) x = rand_gauss(g, 4);
  return EpsLaurent(lo, std::move(c), hi);
}

inline Mat<GaussRational> rand_gauss_mat(std::mt19937_64& g, std::size_t n, int lim = 4) {
  Mat<GaussRational> m(n, n);
  for (auto& x : m.data()) x = rand_gauss(g, lim);
  return m;
}

inline Mat<Rational> rand_int_mat(std::mt19937_64& g, std::size_t r, std::size_t c, int lim = 9) {
  std::uniform_int_distribution<int> d(-lim, lim);
  Mat<Rational> m(r, c);
  for (auto& x : m.data()) x = Rational(d(g));
  return m;
}

// Real skew-symmetric integer matrix.
inline Mat<Rational> rand_skew(std::mt19937_64& g, std::size_t n, int lim = 3) {
  std::uniform_int_distribution<int> d(-lim, lim);
  Mat<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Rational(d(g));
      m(j, i) = -m(i, j);
    }
  return m;
}

// Leibniz determinant: independent oracle for the elimination routines.
template <class T>
T det_leibniz(const Mat<T>& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total = ScalarTraits<T>::zero();
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    T term = ScalarTraits<T>::one();
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, p[i]);
    if (inv & 1)
      total -= term;
    else
      total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Naive coefficient-map product of two truncated series, used as oracle.
inline std::map<int, GaussRational> naive_product(const EpsLaurent& a, const EpsLaurent& b, int upto) {
  std::map<int, GaussRational> out;
  for (int i = a.lo(); i <= a.hi() && i <= upto + 64; ++i)
    for (int j = b.lo(); j <= b.hi() && j <= upto + 64; ++j) {
      if (i + j > upto) continue;
      out[i + j] += a.coeff(i) * b.coeff(j);
    }
  return out;
}

}  // namespace testutil
