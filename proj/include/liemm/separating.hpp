#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liemm/group_algebra.hpp"
#include "liemm/rng.hpp"
#include "liemm/sepfunction.hpp"
#include "liemm/tpp.hpp"

namespace liemm {

using SepReport = TppReport;

// Exact check of the separating contract on every element of X Y^-1 Y Z^-1.
// family[x * |Z| + z] is f_{x,z}; the witness is (x, z, g) with g an index
// into the quotient set.
SepReport verify_separating(const std::vector<SepFn>& family, const std::vector<Mat<GaussRational>>& X,
                            const std::vector<Mat<GaussRational>>& Y, const std::vector<Mat<GaussRational>>& Z);

// Border version over eps-families.  Tuples are (x, z, x', y, y', z') with
// g = x' y^-1 y' z'^-1 evaluated at window `order`; the witness uses that
// order.  Sampling draws the three equalities x=x', y=y', z=z' as
// independent strata so the 1-valued case is reached.
SepReport verify_separating_border(const std::vector<SepFn>& family, const FamilyList& X, const FamilyList& Y,
                                   const FamilyList& Z, int order, const TppOptions& opt = {});

// Real-linear map from coordinates to matrices: v -> sum Re(v_k) P[k] + Im(v_k) R[k].
struct CoordMap {
  std::vector<Mat<GaussRational>> P, R;
  std::size_t dim() const { return P.size(); }
  Mat<GaussRational> operator()(const std::vector<GaussRational>& v) const;
  static CoordMap complex_linear(const std::vector<Mat<GaussRational>>& basis);
};

// Coordinate maps plus complex-linear readoffs with
// pX(fX(v) - fZ(v')) = v and pZ(fX(v) - fZ(v')) = v'.
struct LieSplit {
  CoordMap fX, fZ;
  std::vector<SepFn> pX, pZ;
  std::vector<Mat<GaussRational>> WX, WZ;  // readoff weights
};

LieSplit disjoint_lie_split(const std::vector<Mat<GaussRational>>& basisX,
                            const std::vector<Mat<GaussRational>>& basisZ);
// Same for real-linear maps; throws when the images meet or when no
// complex-linear readoff exists.
LieSplit real_lie_split(CoordMap fX, CoordMap fZ);

// Number of sampled (v, v') pairs where the readoffs fail; coordinates are
// drawn from the given value set.
std::size_t split_inverse_failures(const LieSplit& s, const std::vector<GaussRational>& values, std::size_t samples,
                                   Rng& g);

// One element of Y: C * exp(eps A) (C empty means I).
struct YFamily {
  Mat<GaussRational> C;
  Mat<GaussRational> A;
};

struct SplitInputs {
  LieSplit split;
  SepFn p0;
  std::vector<YFamily> Y;
  int q = 1;
  std::vector<GaussRational> A, B;  // coordinate sets; the first q values are used
  int t_override = 0;               // 0: t = deg r + 1
  int order_min = 0;                // requested order; the needed order wins if larger
  std::size_t x_cap = 0, z_cap = 0; // 0: all of A^dX / B^dZ, else a seeded subset
  std::uint64_t seed = 1;
  std::size_t spot_checks = 50;
};

struct DegreeReport {
  long deg_p0 = 0, deg_r = 0, deg_total = 0;
  long deg_pX = 0, deg_pZ = 0;
  long degree_bound = 0;  // 2 q (dX + dZ)(deg pX + deg pZ)
};

struct SplitOutput {
  std::vector<SeriesMat> Xfams, Yfams_reparam, Zfams;
  std::vector<std::vector<GaussRational>> a_coords, b_coords;
  std::vector<SepFn> r;    // r_{a,b} on Lie-algebra arguments, index x*|Z|+z
  std::vector<SepFn> sep;  // p_{x,z}
  int t = 1, order = 0;
  DegreeReport degrees;
  double full_x = 0, full_z = 0;  // |A|^dX, |B|^dZ before sampling
  const SepFn& at(std::size_t x, std::size_t z) const { return sep[x * Zfams.size() + z]; }
};

// Smallest order that leaves nonnegative exponents certified after the
// reparametrization: t * max(1, eps depth of p0) + 2.
int split_order(int t, const SepFn& p0);

SplitOutput assemble_split(const SplitInputs& in);

// r_{a,b}(fX(a') - fZ(b')) == [a'=a and b'=b] over all coordinate pairs of
// the output (exact evaluation).  Returns the number of mismatches.
std::size_t rab_contract_failures(const SplitOutput& out, const LieSplit& s);

struct InvarianceAudit {
  std::size_t checked = 0, agreed = 0, skipped = 0;
  std::string first_failure;
  bool ok() const { return checked == agreed; }
};

// p(x M z) agrees with p(M) on the common window for random x in X, z in Z
// and the given M.
InvarianceAudit audit_invariance(const SepFn& p, const std::vector<SeriesMat>& X, const std::vector<SeriesMat>& Z,
                                 const std::vector<SeriesMat>& Ms, std::size_t samples, Rng& g);

nlohmann::json degree_json(const DegreeReport& d);

}  // namespace liemm
