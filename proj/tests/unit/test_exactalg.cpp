#include <gtest/gtest.h>

#include "liemm/cyclotomic.hpp"
#include "liemm/series_matrix.hpp"
#include "test_util.hpp"

using namespace liemm;
using testutil::rand_series;

namespace {

EpsLaurent poly(std::vector<int> c, int hi) {
  std::vector<GaussRational> g;
  for (int x : c) g.emplace_back(x);
  return EpsLaurent(0, std::move(g), hi);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(GaussRational, FieldOps) {
  GaussRational z(Rational(1), Rational(2));
  GaussRational w = z * z.inv();
  EXPECT_TRUE(w.is_one());
  EXPECT_EQ((z * z.conj()).re, Rational(5));
  EXPECT_TRUE((z * z.conj()).is_real());
  GaussRational acc(3);
  fma_into(acc, z, z);  // 3 + (1+2i)^2 = 3 + (-3 + 4i)
  EXPECT_EQ(acc, GaussRational(Rational(0), Rational(4)));
}

TEST(Cyclotomic, FifthRootsOfUnity) {
  Cyclotomic z = Cyclotomic::zeta(5);
  Cyclotomic p = Cyclotomic(1);
  for (int k = 0; k < 5; ++k) p *= z;
  EXPECT_TRUE(p == Cyclotomic(1));
  Cyclotomic s;
  for (int k = 0; k < 5; ++k) s += Cyclotomic::zeta(5, k);
  EXPECT_TRUE(s.is_zero());
  EXPECT_TRUE(z * z.conj() == Cyclotomic(1));
  EXPECT_TRUE((z * z.inv()) == Cyclotomic(1));
  EXPECT_FALSE(z.is_gaussian());
  // zeta_4 is i
  EXPECT_EQ(Cyclotomic::zeta(4).to_gauss(), GaussRational::i());
  // cross-field: zeta_20^4 = zeta_5
  EXPECT_TRUE(Cyclotomic::zeta(20, 4) == z);
}

TEST(Series, ProductExamples) {
  EpsLaurent a = poly({1, 1}, 3), b = poly({1, -1}, 3);
  EpsLaurent p = a * b;
  EXPECT_EQ(p.lo(), 0);
  EXPECT_EQ(p.hi(), 3);
  EXPECT_EQ(p.coeff(0), GaussRational(1));
  EXPECT_EQ(p.coeff(1), GaussRational(0));
  EXPECT_EQ(p.coeff(2), GaussRational(-1));
  EXPECT_EQ(p.coeff(3), GaussRational(0));

  EpsLaurent c = poly({1, 1, 1}, 2), d = poly({1, 1}, 2);
  EpsLaurent q = c * d;
  EXPECT_EQ(q.hi(), 2);
  EXPECT_EQ(q.coeff(0), GaussRational(1));
  EXPECT_EQ(q.coeff(1), GaussRational(2));
  EXPECT_EQ(q.coeff(2), GaussRational(2));
  EXPECT_THROW(q.coeff(3), InsufficientOrder);
}

TEST(Series, WindowRule) {
  // [a1,b1] x [a2,b2] -> [a1+a2, min(a1+b2, a2+b1)]
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 30; ++trial) {
    int a1 = static_cast<int>(g() % 5) - 2, b1 = a1 + static_cast<int>(g() % 5);
    int a2 = static_cast<int>(g() % 5) - 2, b2 = a2 + static_cast<int>(g() % 5);
    EpsLaurent x = rand_series(g, a1, b1), y = rand_series(g, a2, b2);
    // force nonzero leading coefficients so lo is the stated one
    if (x.lo() != a1 || y.lo() != a2) continue;
    EpsLaurent p = x * y;
    EXPECT_EQ(p.hi(), std::min(a1 + b2, a2 + b1));
    auto oracle = testutil::naive_product(x, y, p.hi());
    for (int e = a1 + a2; e <= p.hi(); ++e) EXPECT_EQ(p.coeff(e), oracle[e]) << e;
  }
}

TEST(Series, InverseExamples) {
  EpsLaurent a = poly({1, 1}, 2);
  EpsLaurent ia = series_inv(a);
  EXPECT_EQ(ia.hi(), 2);
  EXPECT_EQ(ia.coeff(0), GaussRational(1));
  EXPECT_EQ(ia.coeff(1), GaussRational(-1));
  EXPECT_EQ(ia.coeff(2), GaussRational(1));

  EpsLaurent two(2);
  EpsLaurent half = series_inv(two);
  EXPECT_TRUE(half.is_exact());
  EXPECT_EQ(half.coeff(0), GaussRational(Rational(1, 2)));

  // eps (1 + eps) -> eps^-1 - 1 + eps - ...
  EpsLaurent b(1, {GaussRational(1), GaussRational(1), GaussRational(0)}, 3);
  EpsLaurent ib = series_inv(b);
  EXPECT_EQ(ib.lo(), -1);
  EXPECT_EQ(ib.coeff(-1), GaussRational(1));
  EXPECT_EQ(ib.coeff(0), GaussRational(-1));
  EXPECT_EQ(ib.coeff(1), GaussRational(1));
  EpsLaurent one = b * ib;
  EXPECT_TRUE(one.agrees_with(EpsLaurent(1)));
  EXPECT_GE(one.hi(), 2);

  EXPECT_THROW(series_inv(EpsLaurent()), std::domain_error);
  EXPECT_THROW(series_inv(EpsLaurent::zero_through(4)), std::domain_error);
}

TEST(Series, RingAxiomsProperty) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 40; ++trial) {
    EpsLaurent a = rand_series(g, -1, 4), b = rand_series(g, 0, 3), c = rand_series(g, 1, 5);
    EXPECT_TRUE((a * b).agrees_with(b * a));
    EXPECT_TRUE(((a * b) * c).agrees_with(a * (b * c)));
    EXPECT_TRUE((a * (b + c)).agrees_with(a * b + a * c));
    EXPECT_TRUE((a + EpsLaurent()).agrees_with(a));
    EXPECT_TRUE((a * EpsLaurent(1)) == a);
    EXPECT_TRUE((a - a).known_zero());
  }
}

TEST(Series, MultiplyBackProperty) {
  std::mt19937_64 g(17);
  int checked = 0;
  while (checked < 100) {
    int lo = static_cast<int>(g() % 5) - 2;
    EpsLaurent a = rand_series(g, lo, lo + 1 + static_cast<int>(g() % 5));
    if (!a.valuation()) continue;
    EpsLaurent p = a * series_inv(a);
    ASSERT_GE(p.hi(), 0);
    EXPECT_TRUE(p.agrees_with(EpsLaurent(1)));
    ++checked;
  }
}

TEST(Series, ReparamAndShift) {
  EpsLaurent a = poly({1, 2, 3}, 2);
  EpsLaurent r = a.reparam(3);
  EXPECT_EQ(r.hi(), 8);
  EXPECT_EQ(r.coeff(3), GaussRational(2));
  EXPECT_EQ(r.coeff(6), GaussRational(3));
  EXPECT_EQ(r.coeff(4), GaussRational(0));
  EpsLaurent s = a.shift(-2);
  EXPECT_EQ(s.lo(), -2);
  EXPECT_EQ(s.hi(), 0);
  EXPECT_EQ(s.coeff(0), GaussRational(3));
}

TEST(Matrix, Determinants) {
  Mat<Rational> m{{1, 2}, {3, 4}};
  EXPECT_EQ(det(m), Rational(-2));
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testutil::rand_gauss_mat(g, 4);
    EXPECT_EQ(det(a), testutil::det_leibniz(a));
    auto s = to_series(a);
    EXPECT_TRUE(det(s).agrees_with(EpsLaurent(det(a))));
  }
}

TEST(Matrix, DetMultiplicativeProperty) {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = testutil::rand_gauss_mat(g, 4), b = testutil::rand_gauss_mat(g, 4);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(Matrix, LpmInvariantUnderUnitriangular) {
  std::mt19937_64 g(29);
  std::size_t n = 4;
  auto M = testutil::rand_gauss_mat(g, n);
  Mat<GaussRational> L = Mat<GaussRational>::identity(n), U = L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      L(i, j) = testutil::rand_gauss(g);
      U(j, i) = testutil::rand_gauss(g);
    }
  auto P = L * M * U;
  for (std::size_t j = 1; j <= n; ++j) EXPECT_EQ(lpm(P, j), lpm(M, j)) << j;
}

TEST(Matrix, ConjTranspose) {
  std::mt19937_64 g(31);
  auto M = testutil::rand_gauss_mat(g, 3);
  EXPECT_EQ(conj_transpose(conj_transpose(M)), M);
  Mat<GaussRational> iI = Mat<GaussRational>::identity(3).scaled(GaussRational::i());
  EXPECT_EQ(conj_transpose(iI), -iI);
}

TEST(SeriesMatrix, ExpConjugateSkewHermitian) {
  std::mt19937_64 g(37);
  std::size_t n = 3;
  Mat<GaussRational> A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = GaussRational(Rational(0), testutil::rand_rat(g));
    for (std::size_t j = i + 1; j < n; ++j) {
      A(i, j) = testutil::rand_gauss(g);
      A(j, i) = -A(i, j).conj();
    }
  }
  auto lhs = conj_transpose(mat_exp_trunc(A, 2));
  auto rhs = mat_exp_trunc(-A, 2);
  EXPECT_EQ(lhs, rhs);
}

TEST(SeriesMatrix, OrthogonalUpToOrder) {
  std::mt19937_64 g(41);
  auto A = testutil::rand_skew(g, 4);
  auto E = mat_exp_trunc(A, 2);
  auto P = series_mat_mul(E, conj_transpose(E));
  EXPECT_EQ(min_hi(P), 2);
  auto probe = probe_identity(P, 2);
  EXPECT_FALSE(probe.first_nonzero.has_value());
}

TEST(SeriesMatrix, TruncationConsistency) {
  std::mt19937_64 g(43);
  for (int k = 1; k <= 4; ++k) {
    auto A = testutil::rand_gauss_mat(g, 3, 3);
    EXPECT_EQ(truncate(mat_exp_trunc(A, k + 1), k), mat_exp_trunc(A, k));
  }
}

TEST(SeriesMatrix, InverseMultipliesBack) {
  std::mt19937_64 g(47);
  auto A = testutil::rand_gauss_mat(g, 3, 3);
  auto B = testutil::rand_gauss_mat(g, 3, 3);
  B(0, 0) += GaussRational(20);
  B(1, 1) += GaussRational(20);
  B(2, 2) += GaussRational(20);
  // M = B + eps A + eps^2 A^2/2 + ...
  auto M = to_series(B) + mat_exp_trunc(A, 5) - SeriesMat::identity(3);
  M = truncate(M, 5);
  auto P = series_mat_mul(M, series_mat_inv(M));
  auto probe = probe_identity(P, 5);
  EXPECT_EQ(probe.examined_through, 5);
  EXPECT_FALSE(probe.first_nonzero.has_value());
  auto R = mat_exp_trunc(A, 6, 2);  // exp(eps^2 A)
  EXPECT_EQ(R(0, 0).coeff(1), GaussRational(0));
  EXPECT_EQ(R(0, 1).coeff(2), A(0, 1));
}
