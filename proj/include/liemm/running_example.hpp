#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "liemm/group.hpp"
#include "liemm/rng.hpp"
#include "liemm/sepfunction.hpp"
#include "liemm/tpp.hpp"

namespace liemm {

// Lower (X) and upper (Z) unitriangular matrices with off-diagonal entries
// in {1..q}.  With cap > 0 and more than cap matrices, a seeded subset of
// size cap is returned (sorted by the entry tuple).
struct UnitriangularSets {
  std::vector<Mat<GaussRational>> X, Z;
  double full_count = 0;  // q^(n(n-1)/2)
};
UnitriangularSets build_unitriangular_sets(int n, int q, std::size_t cap = 0, std::uint64_t seed = 1);

// Integer vectors of one squared length len2.
struct UnitVectorSet {
  int dim = 0;
  long len2 = 0;
  std::vector<std::vector<long>> vecs;
};

struct OrthogonalFamily {
  int n = 0, q = 0;
  long entry_max = 0;              // integer entries in [0, entry_max]
  std::vector<UnitVectorSet> V;    // V[d-1] lives in dimension d
  std::vector<Rational> W;         // sorted distinct normalized inner products
  std::vector<Mat<FloatComplex>> Y;
  std::vector<std::vector<std::size_t>> picks;  // picks[y][k]: index into V[n-k-1] for column k
  double full_count = 0;           // prod |V_d|
  double w_constant() const { return double(W.size()) / (double(q) * q); }
};

// Most popular squared-length bucket of nonzero vectors in [0, entry_max]^dim
// (ties go to the smaller length).
UnitVectorSet popular_bucket(int dim, long entry_max);

// Orthonormal basis (n x (n-k)) of the complement of the given orthonormal
// columns, by pivoted Gram-Schmidt on e_1..e_n.
Mat<FloatComplex> completion_basis(const std::vector<std::vector<double>>& cols, int n);

OrthogonalFamily build_orthogonal_family(int n, int q, std::size_t cap = 4096, std::uint64_t seed = 1);

struct ColumnAgreementReport {
  std::uint64_t pairs = 0, comparisons = 0, failures = 0;
  double max_deviation = 0;  // distance to the nearest element of W
  std::string first_failure;
  bool ok() const { return failures == 0; }
};
ColumnAgreementReport verify_column_agreement(const OrthogonalFamily& f, double tol);

// Product over levels k of r(M_k[k,k]) s_k t_k, where M_k = P_k M R_k peels
// off the first k columns of x and rows of z.  Targets M = x y^T y' z.
SepFn build_running_sep_family(int n, int q, const Mat<GaussRational>& x, const Mat<GaussRational>& z,
                               const std::vector<Rational>& W);

struct RunningSepCheck {
  std::uint64_t evaluated = 0, mismatches = 0;
  double max_error_one = 0, max_error_zero = 0;
  std::string first_mismatch;
  // plain float evaluation, which blows up once a level vanishes
  std::uint64_t raw_mismatches = 0;
  double raw_max_error = 0;
};
// Node-snapped float evaluation (snap 1e-8) on sampled tuples
// (x, z, x', y, y', z') of p_{x,z}(x' y^T y' z').
RunningSepCheck check_running_separation(const UnitriangularSets& s, const OrthogonalFamily& f, std::size_t samples,
                                         double tol, Rng& g);

struct LpmExpansionReport {
  std::vector<EpsLaurent> lpm;        // lpm_j(M), j = 1..n
  EpsLaurent sum;
  Rational c2, expected_c2;
  bool c0_ok = false, c1_ok = false, c2_ok = false, per_j_ok = false;
  bool ok() const { return c0_ok && c1_ok && c2_ok && per_j_ok; }
};
// M = exp(eps A) exp(eps B)^-1 truncated at order 3.
LpmExpansionReport lpm_expansion_check(const Mat<Rational>& A, const Mat<Rational>& B);

Mat<Rational> random_skew_symmetric(int n, long lo, long hi, Rng& g);

struct RunningBorder {
  int n = 0, q = 0, order = 0;
  SepFn p0;
  std::vector<Mat<Rational>> A;  // exponents of the families
  std::vector<SeriesMat> Yfams;
  Rational delta;
  long K = 0;                    // grid nodes k delta, k = 1..K
  long grid_bound = 0;           // 1 + 2 max(i'-i) n^2 (q/2)^2 / 2
  double full_count = 0;         // (2 floor(q/2) + 1)^(n(n-1)/2)
  std::vector<std::string> deviations;
};
// Families exp(eps A), A skew-symmetric with entries in [-q/2, q/2];
// p0(M) = r((n - sum lpm_j(M)) / eps^2).
RunningBorder running_border_p0(int n, int q, std::size_t cap = 0, std::uint64_t seed = 1, int order = 4);

struct BorderIndicatorReport {
  std::uint64_t equal_checked = 0, unequal_checked = 0, failures = 0, inconclusive = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && inconclusive == 0; }
};
// p0(y^-1 y') must be 1 + O(eps) when y = y' and 0 + O(eps) otherwise.
BorderIndicatorReport check_border_indicator(const SepFn& p0, const std::vector<SeriesMat>& Yfams,
                                             std::size_t unequal_pairs, Rng& g);

// Lie algebra bases of the lower / upper unitriangular groups.
std::vector<Mat<GaussRational>> strictly_lower_basis(int n);
std::vector<Mat<GaussRational>> strictly_upper_basis(int n);

nlohmann::json orthogonal_family_json(const OrthogonalFamily& f);

}  // namespace liemm
