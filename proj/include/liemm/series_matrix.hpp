#pragma once

#include "liemm/linsolve.hpp"
#include "liemm/matrix.hpp"

namespace liemm {

using SeriesMat = Mat<EpsLaurent>;

// sum_{k <= order} eps^(k*t) A^k / k!, every entry on window [0, order].
SeriesMat mat_exp_trunc(const Mat<GaussRational>& A, int order, int t = 1);
SeriesMat mat_exp_trunc(const Mat<Rational>& A, int order, int t = 1);

// Inverse of a series matrix whose eps^0 coefficient matrix is invertible.
SeriesMat series_mat_inv(const SeriesMat& M);

// Product with every entry truncated at cap.
SeriesMat series_mat_mul(const SeriesMat& a, const SeriesMat& b, int cap = EpsLaurent::kExact);

SeriesMat truncate(const SeriesMat& M, int hi);
SeriesMat reparam(const SeriesMat& M, int t);
SeriesMat shift(const SeriesMat& M, int k);
// Smallest window top over all entries.
int min_hi(const SeriesMat& M);
int min_lo(const SeriesMat& M);
Mat<GaussRational> coefficient(const SeriesMat& M, int e);

// Lowest exponent e <= order where M - I has a nonzero coefficient, or
// nullopt if M = I through min(order, window).  Also reports the window top
// that was actually examined.
struct IdentityProbe {
  std::optional<int> first_nonzero;
  int examined_through;
};
IdentityProbe probe_identity(const SeriesMat& M, int order);

std::string mat_str(const SeriesMat& m);

}  // namespace liemm
