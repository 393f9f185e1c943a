#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "liemm/group.hpp"
#include "liemm/running_example.hpp"
#include "liemm/su_construction.hpp"
#include "liemm/tpp.hpp"
#include "test_util.hpp"

using namespace liemm;

namespace {

Mat<GaussRational> gmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<GaussRational> d;
  std::size_t r = 0, c = 0;
  for (const auto& row : rows) {
    c = row.size();
    for (long v : row) d.emplace_back(v);
    ++r;
  }
  return Mat<GaussRational>(r, c, d);
}

Mat<GaussRational> to_gauss(const Mat<Rational>& m) {
  return m.map([](const Rational& x) { return GaussRational(x); });
}

// Normalized inner products of the most popular bucket, by direct enumeration.
std::set<Rational> bucket_products(int dim, long range) {
  std::map<long, std::vector<std::vector<long>>> buckets;
  std::vector<long> v(dim, 0);
  for (long code = 1; code < std::lround(std::pow(range + 1, dim)); ++code) {
    long c = code, len = 0;
    for (int k = 0; k < dim; ++k) {
      v[k] = c % (range + 1);
      c /= range + 1;
      len += v[k] * v[k];
    }
    buckets[len].push_back(v);
  }
  long best = 0;
  std::size_t size = 0;
  for (const auto& [len, vs] : buckets)
    if (vs.size() > size) {
      size = vs.size();
      best = len;
    }
  std::set<Rational> out;
  for (const auto& a : buckets[best])
    for (const auto& b : buckets[best]) {
      long d = 0;
      for (int k = 0; k < dim; ++k) d += a[k] * b[k];
      out.insert(Rational(d, best));
    }
  return out;
}

EpsLaurent p0_at(const SepFn& p0, const Mat<GaussRational>& A, const Mat<GaussRational>& B, int order) {
  SeriesMat M = series_mat_mul(mat_exp_trunc(A, order), series_mat_inv(mat_exp_trunc(B, order)), order);
  return eval_series(p0, M);
}

}  // namespace

// ---------------------------------------------------------------- running example

TEST(Unitriangular, TwoByTwoEnumeration) {
  auto s = build_unitriangular_sets(2, 2);
  ASSERT_EQ(s.X.size(), 2u);
  EXPECT_EQ(s.X[0], gmat({{1, 0}, {1, 1}}));
  EXPECT_EQ(s.X[1], gmat({{1, 0}, {2, 1}}));
  EXPECT_EQ(s.Z[1], gmat({{1, 2}, {0, 1}}));
}

TEST(Unitriangular, ThreeByThreeCountsAndDeterminants) {
  auto s = build_unitriangular_sets(3, 2);
  EXPECT_EQ(s.X.size(), 8u);
  EXPECT_EQ(s.Z.size(), 8u);
  EXPECT_DOUBLE_EQ(s.full_count, 8.0);
  for (std::size_t k = 0; k < s.X.size(); ++k) {
    EXPECT_EQ(det(s.X[k]), GaussRational(1));
    EXPECT_EQ(det(s.Z[k]), GaussRational(1));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        EXPECT_TRUE(s.X[k](i, j).is_zero());
        EXPECT_TRUE(s.X[k](j, i).re >= Rational(1) && s.X[k](j, i).re <= Rational(2));
      }
  }
}

TEST(Unitriangular, CappedSubsetIsDistinct) {
  auto s = build_unitriangular_sets(4, 3, 50, 9);
  EXPECT_EQ(s.X.size(), 50u);
  EXPECT_DOUBLE_EQ(s.full_count, std::pow(3.0, 6));
  std::set<std::string> seen;
  for (const auto& x : s.X) seen.insert(mat_str(x));
  EXPECT_EQ(seen.size(), 50u);
}

TEST(OrthogonalFamily, BucketsHaveOneLength) {
  auto b = popular_bucket(3, 8);
  ASSERT_FALSE(b.vecs.empty());
  for (const auto& v : b.vecs) EXPECT_EQ(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], b.len2);
  auto one = popular_bucket(1, 8);
  EXPECT_EQ(one.len2, 1);
}

TEST(OrthogonalFamily, InnerProductSetMatchesEnumeration) {
  auto f = build_orthogonal_family(3, 3);
  std::set<Rational> want{Rational(1)};
  for (int d = 2; d <= 3; ++d) {
    auto s = bucket_products(d, 12);
    want.insert(s.begin(), s.end());
  }
  EXPECT_EQ(std::set<Rational>(f.W.begin(), f.W.end()), want);
  EXPECT_TRUE(std::binary_search(f.W.begin(), f.W.end(), Rational(1)));
  for (const auto& w : f.W) {
    bool ok = false;
    for (const auto& V : f.V) ok = ok || (w * Rational(V.len2)).is_integer();
    EXPECT_TRUE(ok) << w;
  }
  // measured constant |W| / q^2
  EXPECT_EQ(f.W.size(), 44u);
  EXPECT_LE(f.w_constant(), 5.0);
}

TEST(OrthogonalFamily, MatricesAreOrthogonal) {
  auto f = build_orthogonal_family(4, 2, 64, 3);
  ASSERT_EQ(f.Y.size(), 64u);
  for (const auto& y : f.Y)
    EXPECT_TRUE(approx_equal(transpose(y) * y, Mat<FloatComplex>::identity(4), 1e-12));
}

TEST(OrthogonalFamily, CompletionBasisIsOrthonormalComplement) {
  std::vector<std::vector<double>> cols{{0.6, 0.8, 0.0, 0.0}};
  auto B = completion_basis(cols, 4);
  ASSERT_EQ(B.cols(), 3u);
  for (std::size_t a = 0; a < 3; ++a) {
    double dc = 0.6 * B(0, a).real() + 0.8 * B(1, a).real();
    EXPECT_NEAR(dc, 0.0, 1e-14);
    for (std::size_t b = 0; b < 3; ++b) {
      double d = 0;
      for (int r = 0; r < 4; ++r) d += B(r, a).real() * B(r, b).real();
      EXPECT_NEAR(d, a == b ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(ColumnAgreement, ExhaustivePairsPass) {
  auto f = build_orthogonal_family(3, 2);
  auto r = verify_column_agreement(f, 1e-9);
  EXPECT_TRUE(r.ok()) << r.first_failure;
  EXPECT_EQ(r.pairs, f.Y.size() * (f.Y.size() + 1) / 2);
  EXPECT_LT(r.max_deviation, 1e-12);
}

TEST(ColumnAgreement, SelfPairsGiveOne) {
  auto f = build_orthogonal_family(3, 2);
  for (const auto& y : f.Y) {
    auto g = transpose(y) * y;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(g(i, i).real(), 1.0, 1e-12);
  }
}

TEST(ColumnAgreement, PlantedColumnDetected) {
  auto f = build_orthogonal_family(3, 2);
  // find two matrices sharing the first column; perturb the second column of one
  std::size_t a = 0, b = 1;
  while (f.picks[b][0] != f.picks[a][0]) ++b;
  Rng g(4);
  std::vector<double> u(3);
  double nr = 0;
  for (auto& e : u) {
    e = draw_normal(g);
    nr += e * e;
  }
  for (int r = 0; r < 3; ++r) f.Y[b](r, 1) = u[r] / std::sqrt(nr);
  auto rep = verify_column_agreement(f, 1e-9);
  EXPECT_FALSE(rep.ok());
  EXPECT_NE(rep.first_failure.find("agreeing in 1 columns"), std::string::npos) << rep.first_failure;
}

TEST(RunningSeparation, ValueOneOnTarget) {
  auto s = build_unitriangular_sets(3, 2);
  auto f = build_orthogonal_family(3, 2);
  for (std::size_t k : {0u, 3u, 7u}) {
    SepFn p = build_running_sep_family(3, 2, s.X[k], s.Z[7 - k], f.W);
    const auto& y = f.Y[5];
    Mat<FloatComplex> M = to_float(s.X[k]) * transpose(y) * y * to_float(s.Z[7 - k]);
    EXPECT_NEAR(std::abs(eval_float(p, M) - 1.0), 0.0, 1e-6);
  }
}

TEST(RunningSeparation, ZeroWhenFirstColumnOfXDiffers) {
  auto s = build_unitriangular_sets(3, 2);
  auto f = build_orthogonal_family(3, 2);
  SepFn p = build_running_sep_family(3, 2, s.X[0], s.Z[0], f.W);
  for (std::size_t xp = 0; xp < s.X.size(); ++xp) {
    if (s.X[xp](1, 0) == s.X[0](1, 0) && s.X[xp](2, 0) == s.X[0](2, 0)) continue;
    const auto& y = f.Y[2];
    Mat<FloatComplex> M = to_float(s.X[xp]) * transpose(y) * y * to_float(s.Z[0]);
    EXPECT_NEAR(std::abs(eval_float(p, M)), 0.0, 1e-6) << xp;
  }
}

TEST(RunningSeparation, DegreeFromLevelFactors) {
  auto s = build_unitriangular_sets(3, 3);
  auto f = build_orthogonal_family(3, 3);
  SepFn p = build_running_sep_family(3, 3, s.X[0], s.Z[0], f.W);
  long deg_r = static_cast<long>(f.W.size()) - 1;
  // three r factors; s and t cover 2 + 1 entries each with degree q - 1
  EXPECT_EQ(p->degree, 3 * deg_r + 2 * 3 * 2);
}

TEST(RunningSeparation, SampledTuplesWithinTolerance) {
  auto s = build_unitriangular_sets(3, 2);
  auto f = build_orthogonal_family(3, 2);
  Rng g(11);
  auto r = check_running_separation(s, f, 400, 1e-6, g);
  EXPECT_EQ(r.evaluated, 400u);
  EXPECT_EQ(r.mismatches, 0u) << r.first_mismatch;
  EXPECT_LE(r.max_error_one, 1e-6);
  // plain evaluation is not usable here; keep that visible
  EXPECT_GT(r.raw_max_error, 1.0);
}

TEST(RunningSeparation, SnappingOnlyTouchesNearNodeArguments) {
  Mat<FloatComplex> M(1, 1);
  auto p = sep_apply(lagrange_indicator(GaussRational(2), {GaussRational(1), GaussRational(2), GaussRational(3)}),
                     sep_entry(0, 0));
  M(0, 0) = 2.0 + 1e-10;
  EXPECT_EQ(eval_float_snapped(p, M, 1e-8), FloatComplex(1.0));
  M(0, 0) = 2.5;
  EXPECT_NEAR(std::abs(eval_float_snapped(p, M, 1e-8) - eval_float(p, M)), 0.0, 1e-15);
  EXPECT_NEAR(eval_float(p, M).real(), 0.75, 1e-15);
}

TEST(RunningTpp, ExhaustiveFloatCheckN3) {
  auto s = build_unitriangular_sets(3, 2);
  auto f = build_orthogonal_family(3, 2, 4, 5);
  FloatMatGroup G(3, 1e-9);
  std::vector<Mat<FloatComplex>> X, Z;
  for (const auto& x : s.X) X.push_back(to_float(x));
  for (const auto& z : s.Z) Z.push_back(to_float(z));
  TppOptions opt;
  opt.mode = SampleMode::Exhaustive;
  auto rep = verify_tpp(G, X, f.Y, Z, opt);
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.tuples_checked, 65536u);

  auto Y = f.Y;
  Y[3] = X[2] * float_inverse(X[5]) * Y[0];
  auto bad = verify_tpp(G, X, Y, Z, opt);
  ASSERT_EQ(bad.verdict, Verdict::Fail);
  ASSERT_TRUE(bad.witness);
  const auto& w = *bad.witness;
  EXPECT_TRUE(approx_equal(tpp_product(G, X, Y, Z, w), Mat<FloatComplex>::identity(3), 1e-9));
}

TEST(LpmExpansion, EqualExponents) {
  Rng g(1);
  auto A = random_skew_symmetric(3, -2, 2, g);
  auto r = lpm_expansion_check(A, A);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.c2, Rational(0));
}

TEST(LpmExpansion, TwoByTwoHandExpansion) {
  for (long w : {1L, 2L, -3L}) {
    Mat<Rational> A{{Rational(0), Rational(w)}, {Rational(-w), Rational(0)}};
    auto r = lpm_expansion_check(A, Mat<Rational>(2, 2));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.c2, Rational(-w * w, 2));
  }
}

TEST(LpmExpansion, RandomPairsN4) {
  Rng g(20);
  for (int t = 0; t < 20; ++t) {
    auto A = random_skew_symmetric(4, -3, 3, g), B = random_skew_symmetric(4, -3, 3, g);
    auto r = lpm_expansion_check(A, B);
    EXPECT_TRUE(r.ok()) << t;
    // oracle: eps^2 coefficient of exp(eps C) diagonal products is -|row|^2/2 per lpm
    Mat<Rational> C = A - B;
    Rational want;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) want -= Rational(j - i) * C(i, j) * C(i, j) / Rational(2);
    EXPECT_EQ(r.c2, want);
  }
}

TEST(LpmExpansion, RejectsNonSkew) {
  Mat<Rational> A{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}};
  EXPECT_THROW(lpm_expansion_check(A, A), std::invalid_argument);
}

TEST(RunningBorder, IndicatorOnTwoByTwo) {
  auto rb = running_border_p0(2, 2);
  ASSERT_FALSE(rb.deviations.empty());
  EXPECT_NE(rb.deviations[0].find("sign correction"), std::string::npos);
  EXPECT_EQ(rb.Yfams.size(), 3u);
  Mat<GaussRational> A(2, 2), Z(2, 2);
  A(0, 1) = 1;
  A(1, 0) = -1;
  // argument (n - sum lpm)/eps^2 = 1/2 + O(eps) for w = 1
  auto arg = sep_div_eps(2, sep_affine(GaussRational(-1), GaussRational(2), sep_sum_lpm(2)));
  EXPECT_EQ(p0_at(arg, A, Z, 4).coeff(0), GaussRational(Rational(1, 2)));
  EpsLaurent v = p0_at(rb.p0, A, Z, 4);
  EXPECT_TRUE(v.coeff(0).is_zero());
  EXPECT_GE(v.hi(), 0);
  EpsLaurent one = p0_at(rb.p0, A, A, 4);
  EXPECT_EQ(one.coeff(0), GaussRational(1));
}

TEST(RunningBorder, GridSizeAndDegreeGrowth) {
  std::vector<long> K;
  for (int q : {2, 4, 8}) {
    auto rb = running_border_p0(3, q, 1);
    EXPECT_LE(rb.K + 1, rb.grid_bound);
    EXPECT_EQ(rb.p0->degree, 3 * rb.K);
    K.push_back(rb.K);
  }
  EXPECT_EQ(K[0], 16);
  EXPECT_EQ(K[1], 64);
  EXPECT_EQ(K[2], 256);
}

TEST(RunningBorder, SampledPairsN3Q4) {
  auto rb = running_border_p0(3, 4);
  EXPECT_EQ(rb.Yfams.size(), 125u);
  Rng g(7);
  auto r = check_border_indicator(rb.p0, rb.Yfams, 200, g);
  EXPECT_TRUE(r.ok()) << r.first_failure;
  EXPECT_EQ(r.equal_checked, 125u);
  EXPECT_EQ(r.unequal_checked, 200u);
}

TEST(RunningBorder, GridOverflowReportsSize) {
  try {
    running_border_p0(6, 1000000, 1);
    FAIL() << "expected overflow";
  } catch (const std::overflow_error& e) {
    EXPECT_NE(std::string(e.what()).find("35000000000000"), std::string::npos) << e.what();
  }
}

// ---------------------------------------------------------------- SU(n/2, n/2)

TEST(SuBuild, FourByFour) {
  auto su = su_build(4);
  EXPECT_EQ(su.D0, Mat<GaussRational>::diag({GaussRational(4), GaussRational(3), GaussRational(Rational(1, 3)),
                                             GaussRational(Rational(1, 4))}));
  EXPECT_EQ(su.trace_DsD2, Rational(256) + Rational(81) + Rational(1, 81) + Rational(1, 256));
  EXPECT_EQ(conj_transpose(su.D) * su.Q * su.D, su.Q);
  EXPECT_EQ(det(su.D), GaussRational(1));
  EXPECT_TRUE(su.DQD_ok && su.det_ok && su.UQU_ok);
  // W/sqrt(2) is an involution, so W^2 = 2 I
  EXPECT_EQ(su.W * su.W, Mat<GaussRational>::identity(4).scaled(GaussRational(2)));
}

TEST(SuBuild, EntriesHaveBoundedDenominators) {
  for (int n : {4, 6}) {
    auto su = su_build(n);
    mpz_class f = factorial(n), bound = 2 * f * f;
    for (const auto& e : su.D.data()) {
      EXPECT_TRUE(e.im.is_zero());
      EXPECT_EQ(mpz_class(bound % e.re.den()), 0);
    }
  }
}

TEST(SuBuild, OddOrSmallRejected) {
  EXPECT_THROW(su_build(5), std::invalid_argument);
  EXPECT_THROW(su_build(2), std::invalid_argument);
}

TEST(SuSBasis, SkewHermitianZeroDiagonal) {
  auto su = su_build(4);
  EXPECT_EQ(su_complex_dim(4), 2);
  EXPECT_EQ(su.S_basis.size(), 4u);
  for (const auto& b : su.S_basis) {
    EXPECT_EQ(conj_transpose(b), -b);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(b(i, i).is_zero());
    EXPECT_TRUE(in_S(su, b));
  }
  EXPECT_EQ(su_S_basis(6).size(), 12u);
  EXPECT_EQ(su_complex_dim(6), 6);
}

TEST(SuLattice, RadiusAndValues) {
  EXPECT_EQ(su_lattice_radius(1), 1);
  EXPECT_EQ(su_lattice_radius(2), 1);
  EXPECT_EQ(su_lattice_radius(4), 1);
  EXPECT_EQ(su_lattice_radius(5), 2);
  EXPECT_EQ(su_lattice_radius(8), 2);
  EXPECT_EQ(su_lattice_radius(17), 3);
  EXPECT_EQ(su_lattice_values(2).size(), 9u);
}

TEST(SuTau, PlacesConjugatesBelow) {
  auto su = su_build(4);
  GaussRational a(Rational(1), Rational(2)), b(Rational(-3), Rational(1));
  auto A = su_tau(su, {a, b});
  EXPECT_EQ(A(0, 1), a);
  EXPECT_EQ(A(1, 0), -a.conj());
  EXPECT_EQ(A(2, 3), b);
  EXPECT_EQ(A(3, 2), -b.conj());
  EXPECT_TRUE(in_S(su, A));
}

TEST(SuTraceInvariant, IdentityGivesTraceOfSquare) {
  auto su = su_build(4);
  auto t = su_trace_invariant(to_series(Mat<GaussRational>::identity(4)), su);
  EXPECT_TRUE(t.agree);
  EXPECT_EQ(t.direct.coeff(0), GaussRational(su.trace_DsD2));
  EXPECT_EQ(su_trace_invariant_exact(Mat<GaussRational>::identity(4), su), GaussRational(su.trace_DsD2));
}

TEST(SuTraceInvariant, InvariantUnderXAndZ) {
  auto su = su_build(4);
  std::mt19937_64 g0(3);
  Rng g(3);
  std::vector<SeriesMat> X, Zs, Ms;
  for (int k = 0; k < 3; ++k) {
    auto A = su_random_lattice(su, 4, g), B = su_random_lattice(su, 4, g);
    X.push_back(mat_exp_trunc(su.Dinv * A * su.D, 4));
    Zs.push_back(mat_exp_trunc(su.D * B * su.Dinv, 4));
    Ms.push_back(to_series(testutil::rand_gauss_mat(g0, 4, 3)));
  }
  auto p1 = sep_invariant_pk(1, su.D, su.Q, ConjMode::Direct);
  auto audit = audit_invariance(p1, X, Zs, Ms, 12, g);
  EXPECT_TRUE(audit.ok()) << audit.first_failure;
  EXPECT_EQ(audit.checked, 12u);
}

TEST(SuTraceInvariant, FirstOrderCoefficientVanishes) {
  auto su = su_build(4);
  Rng g(8);
  for (int k = 0; k < 5; ++k) {
    auto A = su_random_lattice(su, 4, g);
    auto t = su_trace_invariant(mat_exp_trunc(A, 2), su);
    EXPECT_TRUE(t.direct.coeff(1).is_zero());
    EXPECT_TRUE(t.agree);
    // oracle: first order term is Tr(D^*(A^* + A)...) = 0 by skew-Hermitian cancellation
    auto Ds = conj_transpose(su.D);
    auto lin = trace(Ds * conj_transpose(A) * Ds * su.D * su.D) + trace(Ds * Ds * su.D * A * su.D);
    EXPECT_TRUE(lin.is_zero());
  }
}

TEST(SuTraceInvariant, DualPathAgreesOnGroupAndFlagsOutside) {
  auto su = su_build(4);
  Rng g(5);
  for (int k = 0; k < 4; ++k) {
    auto A = su_random_lattice(su, 2, g), B = su_random_lattice(su, 2, g);
    SeriesMat x = mat_exp_trunc(su.Dinv * A * su.D, 5), y = mat_exp_trunc(B, 5);
    SeriesMat z = mat_exp_trunc(su.D * A * su.Dinv, 5);
    for (const SeriesMat& M : {x, y, z, series_mat_mul(series_mat_mul(x, y, 5), z, 5)}) {
      EXPECT_TRUE(su_trace_invariant(M, su).agree);
      auto a = conj_entries(M), b = conj_via_minors(M, su.Q);
      bool same = true;
      for (std::size_t e = 0; e < a.data().size(); ++e) same = same && a.data()[e].agrees_with(b.data()[e]);
      EXPECT_TRUE(same);
    }
  }
  auto M = Mat<GaussRational>::diag({GaussRational(2), GaussRational(Rational(1, 2)), GaussRational(1), GaussRational(1)});
  EXPECT_FALSE(su_trace_invariant(to_series(M), su).agree);
}

TEST(SuEps2, EqualExponentsGiveZero) {
  auto su = su_build(4);
  Rng g(2);
  auto A = su_random_lattice(su, 4, g);
  auto r = su_eps2_check(su, A, A);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.c2.is_zero());
  EXPECT_TRUE(r.C_diagonal);
}

TEST(SuEps2, RandomLatticePairsMatchClosedForm) {
  auto su = su_build(4);
  Rng g(21);
  for (int t = 0; t < 20; ++t) {
    auto A = su_random_lattice(su, 4, g), B = su_random_lattice(su, 4, g);
    auto r = su_eps2_check(su, A, B);
    EXPECT_TRUE(r.ok()) << t;
    // independent oracle: -Tr(DsD (A-B)^*(A-B) DsD) + Tr(D^* (A-B)^* D^* D (A-B) D)
    auto Ds = conj_transpose(su.D), DsD = Ds * su.D, E = A - B;
    auto c2 = -trace(DsD * conj_transpose(E) * E * DsD) + trace(Ds * conj_transpose(E) * Ds * su.D * E * su.D);
    EXPECT_EQ(r.c2, c2);
  }
}

TEST(SuEps2, ZeroIffCDiagonal) {
  auto su = su_build(4);
  // A - B = U diag(i, 2i, -i, 0) U^* is skew-Hermitian with diagonal C
  auto dg = Mat<GaussRational>::diag({GaussRational::i(), GaussRational(Rational(0), Rational(2)),
                                      -GaussRational::i(), GaussRational(0)});
  auto A = (su.W * dg * transpose(su.W)).scaled(GaussRational(Rational(1, 2)));
  auto r = su_eps2_check(su, A, Mat<GaussRational>(4, 4));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.C_diagonal);
  EXPECT_TRUE(r.c2.is_zero());
  Rng g(4);
  auto B = su_random_lattice(su, 4, g);
  auto r2 = su_eps2_check(su, B, Mat<GaussRational>(4, 4));
  EXPECT_FALSE(r2.C_diagonal);
  EXPECT_FALSE(r2.c2.is_zero());
}

TEST(SuCValue, HandComputedUnitDifference) {
  auto su = su_build(4);
  auto A = su_tau(su, {GaussRational(1), GaussRational(0)});
  Mat<GaussRational> Z(4, 4);
  // C[0,1] = C[2,3]-type entries carry 1/2, weights 49, 49/20736, (143/9)^2, (143/16)^2
  EXPECT_EQ(su_c_exact(su, A, Z), Rational(3953713, 41472));
  EXPECT_THROW(su_c_value(su, A, Z), NonIntegralC);
  auto same = su_c_value(su, A, A);
  EXPECT_TRUE(same.isZero);
  EXPECT_EQ(same.cTimes2nFactSq, 0);
}

TEST(SuCValue, ZeroOnlyOnEqualPairs) {
  auto su = su_build(4);
  Rng g(100);
  for (int t = 0; t < 100; ++t) {
    auto A = su_random_lattice(su, 4, g);
    auto B = t % 4 == 0 ? A : su_random_lattice(su, 4, g);
    Rational c = su_c_exact(su, A, B);
    EXPECT_GE(c, Rational(0));
    EXPECT_EQ(c.is_zero(), A == B);
  }
}

TEST(SuP0, IndicatorOnIdentityAndUnequalPair) {
  auto su = su_build(4);
  auto p = su_p0(su, 2);
  EXPECT_EQ(p.L, 41472);
  EXPECT_TRUE(p.c_max_exact);
  EXPECT_EQ(p.K, (p.c_max * Rational(p.L)).num());
  EXPECT_EQ(p.p0->degree, 4 * p.K);
  EXPECT_FALSE(p.claimed_scale_divides);
  Rng g(6);
  auto A = su_random_lattice(su, 2, g);
  auto one = p0_at(p.p0, A, A, 3);
  EXPECT_EQ(one.coeff(0), GaussRational(1));
  auto B = su_tau(su, {GaussRational(1), GaussRational(Rational(0), Rational(-1))});
  auto zero = p0_at(p.p0, B, A == B ? Mat<GaussRational>(4, 4) : A, 3);
  EXPECT_TRUE(zero.coeff(0).is_zero());
  EXPECT_GE(zero.hi(), 0);
}

TEST(SuP0, DegreeGrowsLinearly) {
  auto su = su_build(4);
  std::vector<double> per_q;
  for (int q : {2, 4, 8}) per_q.push_back(double(su_p0(su, q).p0->degree) / q);
  double hi = *std::max_element(per_q.begin(), per_q.end()), lo = *std::min_element(per_q.begin(), per_q.end());
  EXPECT_LE(hi / lo, 2.0 + 1e-12);
  // a quadratic law would give deg(8)/deg(2) = 16
  EXPECT_DOUBLE_EQ(per_q[2] * 8 / (per_q[0] * 2), 4.0);
}

TEST(SuThetaPsi, RankAndReadoffs) {
  auto su = su_build(4);
  auto s = su_theta_psi(su);
  EXPECT_EQ(s.real_rank, 8u);
  std::vector<GaussRational> zero(2);
  Mat<GaussRational> th = s.split.fX(zero) - s.split.fZ(zero);
  EXPECT_EQ(th, Mat<GaussRational>(4, 4));
  std::mt19937_64 g(12);
  for (int t = 0; t < 50; ++t) {
    std::vector<GaussRational> a{testutil::rand_gauss(g), testutil::rand_gauss(g)};
    std::vector<GaussRational> b{testutil::rand_gauss(g), testutil::rand_gauss(g)};
    Mat<GaussRational> M = s.split.fX(a) - s.split.fZ(b);
    for (int k = 0; k < 2; ++k) {
      EXPECT_EQ(eval_exact(s.split.pX[k], M), a[k]);
      EXPECT_EQ(eval_exact(s.split.pZ[k], M), b[k]);
    }
    EXPECT_EQ(s.split.fX(a), su.Dinv * su_tau(su, a) * su.D);
  }
}

TEST(SuAssemble, SmallBudgetPasses) {
  SuAssembleOptions o;
  o.sample_budget = 300;
  o.seed = 7;
  auto r = su_assemble(o);
  EXPECT_EQ(r.verdict, Verdict::Pass) << r.tpp.note << " / " << r.sep.note;
  EXPECT_EQ(r.out.Xfams.size(), 4u);
  EXPECT_EQ(r.out.Yfams_reparam.size(), 81u);
  EXPECT_TRUE(r.sizes_ok);
  EXPECT_TRUE(r.degree_identity);
  EXPECT_EQ(r.out.t, 5);
  EXPECT_EQ(r.out.order, 12);
}

TEST(SuAssemble, DegenerateQOne) {
  SuAssembleOptions o;
  o.q = 1;
  o.sample_budget = 100;
  auto r = su_assemble(o);
  EXPECT_EQ(r.out.Xfams.size(), 1u);
  EXPECT_EQ(r.out.Zfams.size(), 1u);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(SuAssemble, ConstantP0FailsOnUnequalY) {
  SuAssembleOptions o;
  o.sample_budget = 500;
  o.planted_constant_p0 = true;
  auto r = su_assemble(o);
  EXPECT_EQ(r.tpp.verdict, Verdict::Pass);
  ASSERT_EQ(r.sep.verdict, Verdict::Fail);
  ASSERT_TRUE(r.sep.witness);
  const auto& w = *r.sep.witness;  // (x, z, x', y, y', z')
  EXPECT_NE(w[3], w[4]);
}

TEST(Kvn, RandomUnitariesAndDiagonalEquality) {
  auto r = kvn_inequality_check(4, 1000, 1e-9, 17);
  EXPECT_EQ(r.trials, 1000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_LT(r.max_excess, 0.0);
  EXPECT_LE(r.planted_error, 1e-9);
  EXPECT_LE(r.identity_error, 1e-9);
  Rng g(1);
  auto U = random_unitary(4, g);
  EXPECT_TRUE(approx_equal(conj_transpose(U) * U, Mat<FloatComplex>::identity(4), 1e-12));
}
