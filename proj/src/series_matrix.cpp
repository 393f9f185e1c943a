#include "liemm/series_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace liemm {

SeriesMat mat_exp_trunc(const Mat<GaussRational>& A, int order, int t) {
  if (!A.square()) throw std::invalid_argument("exponential of non-square matrix");
  if (order < 0 || t < 1) throw std::invalid_argument("bad truncation order");
  std::size_t n = A.rows();
  int kmax = order / t;
  std::vector<Mat<GaussRational>> terms;  // A^k / k!
  terms.push_back(Mat<GaussRational>::identity(n));
  for (int k = 1; k <= kmax; ++k)
    terms.push_back((terms.back() * A).scaled(GaussRational(Rational(1, k))));
  SeriesMat E(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<GaussRational> c(static_cast<std::size_t>(order) + 1);
      for (int k = 0; k <= kmax; ++k) c[static_cast<std::size_t>(k * t)] = terms[static_cast<std::size_t>(k)](i, j);
      E(i, j) = EpsLaurent(0, std::move(c), order);
    }
  return E;
}

SeriesMat mat_exp_trunc(const Mat<Rational>& A, int order, int t) {
  return mat_exp_trunc(A.map([](const Rational& x) { return GaussRational(x); }), order, t);
}

SeriesMat series_mat_mul(const SeriesMat& a, const SeriesMat& b, int cap) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  SeriesMat r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      EpsLaurent acc;
      bool first = true;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
        if (first) {
          acc = series_mul(a(i, k), b(k, j), cap);
          first = false;
        } else {
          series_fma(acc, a(i, k), b(k, j));
        }
      }
      r(i, j) = std::move(acc);
    }
  return r;
}

SeriesMat truncate(const SeriesMat& M, int hi) {
  return M.map([hi](const EpsLaurent& s) { return s.truncate(hi); });
}

SeriesMat reparam(const SeriesMat& M, int t) {
  return M.map([t](const EpsLaurent& s) { return s.reparam(t); });
}

SeriesMat shift(const SeriesMat& M, int k) {
  return M.map([k](const EpsLaurent& s) { return s.shift(k); });
}

int min_hi(const SeriesMat& M) {
  int h = EpsLaurent::kExact;
  for (const auto& s : M.data()) h = std::min(h, s.hi());
  return h;
}

int min_lo(const SeriesMat& M) {
  int l = EpsLaurent::kExact;
  for (const auto& s : M.data())
    if (auto v = s.valuation()) l = std::min(l, *v);
  return l;
}

Mat<GaussRational> coefficient(const SeriesMat& M, int e) {
  return M.map([e](const EpsLaurent& s) { return s.coeff(e); });
}

SeriesMat series_mat_inv(const SeriesMat& M) {
  if (!M.square()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = M.rows();
  for (const auto& s : M.data())
    if (auto v = s.valuation(); v && *v < 0)
      throw std::domain_error("series matrix inverse needs entries without negative exponents");
  int h = min_hi(M);
  Mat<GaussRational> M0 = coefficient(M, 0);
  Mat<GaussRational> M0inv = mat_inverse(M0);
  if (h >= EpsLaurent::kExact) {
    // exact input: invertible constant part with no higher terms only
    SeriesMat R = M - to_series(M0);
    for (const auto& s : R.data())
      if (!s.is_exact_zero()) throw InsufficientOrder("inverse of an exact non-constant series matrix needs a window");
    return to_series(M0inv);
  }
  SeriesMat inv0 = to_series(M0inv);
  SeriesMat N = -(series_mat_mul(inv0, M - to_series(M0), h));
  // (I + N')^{-1} with N' = -N = O(eps): Horner on sum_k N^k
  SeriesMat I = SeriesMat::identity(n);
  SeriesMat S = I;
  for (int k = 1; k <= h; ++k) S = I + series_mat_mul(N, S, h);
  return truncate(series_mat_mul(S, inv0, h), h);
}

IdentityProbe probe_identity(const SeriesMat& M, int order) {
  int top = std::min(order, min_hi(M));
  std::optional<int> first;
  int lowest = EpsLaurent::kExact;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      EpsLaurent d = (i == j) ? M(i, j) - EpsLaurent(1) : M(i, j);
      if (auto v = d.valuation(); v && *v <= top) lowest = std::min(lowest, *v);
    }
  if (lowest < EpsLaurent::kExact) first = lowest;
  return {first, top};
}

std::string mat_str(const SeriesMat& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace liemm
