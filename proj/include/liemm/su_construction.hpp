#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "liemm/rng.hpp"
#include "liemm/separating.hpp"
#include "liemm/sepfunction.hpp"

namespace liemm {

// SU(n/2, n/2) data.  U = W / sqrt(2) never appears alone: D = (1/2) W D0 W^T
// and C = U^*(A-B) U = (1/2) W^T (A-B) W stay Gaussian-rational.
struct SuConstruction {
  int n = 0;
  Mat<GaussRational> Q, J, W, D0, D, Dinv;
  std::vector<Rational> dsq;  // |d_i|^2 for the diagonal of D0
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // one complex coordinate each
  std::vector<Mat<GaussRational>> S_basis;  // per position: E_ij - E_ji, i(E_ij + E_ji)
  Rational trace_DsD2;  // Tr((D^*D)^2)
  bool DQD_ok = false, det_ok = false, UQU_ok = false;
};

SuConstruction su_build(int n);
std::vector<Mat<GaussRational>> su_S_basis(int n);
int su_complex_dim(int n);  // n^2/4 - n/2

// The lattice {a + ib : |a|, |b| <= ceil(sqrt(q)/2)}.
long su_lattice_radius(int q);
std::vector<GaussRational> su_lattice_values(int q);

// Coordinates above the block diagonals, conjugates negated below.
Mat<GaussRational> su_tau(const SuConstruction& su, const std::vector<GaussRational>& a);
bool in_S(const SuConstruction& su, const Mat<GaussRational>& A);

// Tr(D^* M^* D^* D M D) by direct conjugation and by the cofactor route.
struct TraceInvariant {
  EpsLaurent direct, via_minors;
  bool agree = false;  // on the common window; false signals M outside G
};
TraceInvariant su_trace_invariant(const SeriesMat& M, const SuConstruction& su);
GaussRational su_trace_invariant_exact(const Mat<GaussRational>& M, const SuConstruction& su);

// sum_{i<j} (|d_i|^2 - |d_j|^2)^2 |C[i,j]|^2 with C = U^*(A-B)U.
Rational su_c_exact(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B);
Mat<GaussRational> su_C(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B);

struct Eps2Report {
  GaussRational c0, c1, c2;
  Rational closed_form;  // -sum_{i<j} (...)^2 |C[i,j]|^2
  bool c0_ok = false, c1_ok = false, c2_ok = false;
  bool C_diagonal = false;
  bool ok() const { return c0_ok && c1_ok && c2_ok; }
};
// M = exp(eps A) exp(eps B)^-1 truncated at order 3.
Eps2Report su_eps2_check(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B);

struct NonIntegralC : std::runtime_error {
  explicit NonIntegralC(const std::string& w) : std::runtime_error("2(n!)^2 c is not an integer: " + w) {}
};

struct CReport {
  Rational c;
  mpz_class cTimes2nFactSq;
  bool isZero = false;
};
// Throws NonIntegralC when 2(n!)^2 c is not an integer.
CReport su_c_value(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B);

struct SuP0 {
  SepFn p0;
  long L = 0;            // grid quantum 1/L: lcm of the denominators c can take
  long K = 0;            // grid nodes k/L, k = 1..K
  Rational c_max;        // largest c over the difference lattice
  bool c_max_exact = false;  // enumerated (else a box bound)
  std::uint64_t differences = 0;
  long claimed_scale = 0;    // 2 (n!)^2
  bool claimed_scale_divides = false;  // L | 2(n!)^2
  long deg_grid() const { return K; }
};
SuP0 su_p0(const SuConstruction& su, int q);

struct SuSplit {
  LieSplit split;
  std::size_t real_rank = 0, real_dim = 0;  // rank of theta over R, and 2 (dX + dZ)
};
// fX(a) = D^-1 tau(a) D, fZ(b) = D tau(b) D^-1, readoffs by exact solve.
SuSplit su_theta_psi(const SuConstruction& su);

struct SuAssembleOptions {
  int n = 4, q = 2;
  int order = 0;                   // minimum; the needed order wins
  std::uint64_t sample_budget = 10000;
  std::uint64_t seed = 1;
  SampleMode mode = SampleMode::Auto;
  std::size_t y_cap = 4096;
  bool planted_constant_p0 = false;  // replace p0 with 1
};

struct SuAssembleReport {
  SuAssembleOptions opt;
  SplitOutput out;
  SuP0 p0;
  std::size_t real_rank = 0;
  TppReport tpp, sep;
  Verdict verdict = Verdict::Pass;
  double full_y = 0;
  int exponent_num = 0;  // n^2/4 - n/2
  bool sizes_ok = false;   // |X|, |Y|, |Z| >= q^(n^2/4 - n/2)
  bool degree_identity = false;  // deg p_{x,z} = deg p0 + deg r
};
SuAssembleReport su_assemble(const SuAssembleOptions& opt);
nlohmann::json su_assemble_json(const SuAssembleReport& r);

struct KvnReport {
  std::size_t trials = 0, violations = 0;
  double max_excess = -1e300;  // max of value - bound over random unitaries
  double planted_error = 0;    // |value - bound| for M = U diag(i,-i,1,-1,...) U^*
  double identity_error = 0;
  bool ok(double tol) const { return violations == 0 && planted_error <= tol && identity_error <= tol; }
};
KvnReport kvn_inequality_check(int n, std::size_t trials, double tol, std::uint64_t seed);

// Haar-like unitary from Gram-Schmidt on a complex Gaussian matrix.
Mat<FloatComplex> random_unitary(int n, Rng& g);
// Random element of S with lattice coordinates.
Mat<GaussRational> su_random_lattice(const SuConstruction& su, int q, Rng& g);

nlohmann::json su_construction_json(const SuConstruction& su);

}  // namespace liemm
