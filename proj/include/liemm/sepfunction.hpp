#pragma once

#include <nlohmann/json.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "liemm/series_matrix.hpp"

namespace liemm {

// Raised when a grid indicator is evaluated at a value that is neither 0
// nor a grid node and the degree is too large to expand.
struct OffGridValue : std::domain_error {
  explicit OffGridValue(const std::string& w) : std::domain_error("grid indicator argument off grid: " + w) {}
};

// Univariate polynomial used inside separating functions.
struct UniPoly {
  enum class Kind { Lagrange, Dense, Grid };
  Kind kind = Kind::Dense;
  // Lagrange: 1 at nodes[point], 0 at the other nodes
  std::vector<GaussRational> nodes;
  std::size_t point = 0;
  // Dense: sum coeffs[k] z^k
  std::vector<GaussRational> coeffs;
  // Grid: prod_{k=1..K} (1 - z/(k delta)); 1 at 0 and 0 at k delta
  Rational delta;
  long K = 0;

  long degree() const;
  GaussRational eval(const GaussRational& z) const;
  FloatComplex eval(FloatComplex z) const;
  EpsLaurent eval(const EpsLaurent& z) const;
  nlohmann::json to_json() const;
};

// Exact Lagrange basis polynomial; duplicate nodes are rejected.
UniPoly lagrange_indicator(const GaussRational& point, const std::vector<GaussRational>& points);
UniPoly grid_indicator(const Rational& delta, long K);
UniPoly dense_poly(std::vector<GaussRational> coeffs);

// Grid degrees above this are evaluated in closed form at the constant
// term only; below it the product is expanded on the full window.
constexpr long kGridExpandLimit = 20000;
constexpr long kGridMaxK = 1000000000000L;

enum class ConjMode { Direct, Minor };

struct SepNode;
using SepFn = std::shared_ptr<const SepNode>;

struct SepNode {
  enum class Kind {
    Const, Entry, Lpm, LinearForm, Trace, InvariantPk, Univariate,
    Product, Sum, Affine, DivEps, Reparam, MatrixTransform
  };
  Kind kind = Kind::Const;
  GaussRational a, b;                // Const: a; LinearForm: b offset; Affine: a*x + b
  std::size_t i = 0, j = 0;          // Entry (i,j); Lpm order j; InvariantPk order i
  Mat<GaussRational> W;              // LinearForm weights: sum W(i,j) M(i,j) + b
  Mat<GaussRational> D, Q;           // InvariantPk
  ConjMode conj = ConjMode::Direct;  // InvariantPk
  std::shared_ptr<const UniPoly> poly;
  int k = 0;                         // DivEps power; Reparam t; MatrixTransform eps division
  Mat<GaussRational> L, R;           // MatrixTransform: (L M R - [I]) / eps^k
  bool sub_identity = false;
  std::vector<SepFn> kids;
  long degree = 0;                   // upper bound on total degree in the entries
};

SepFn sep_const(const GaussRational& c);
SepFn sep_entry(std::size_t i, std::size_t j);
SepFn sep_lpm(std::size_t j);
SepFn sep_sum_lpm(std::size_t n);  // sum_{j=1..n} lpm_j
SepFn sep_linear_form(Mat<GaussRational> W, GaussRational b = {});
SepFn sep_trace();
// sum over k-subsets S, T of det((DMD)_{S,T}) conj(det((DMD)_{S,T})); for
// k = 1 this is Tr(D* M* D* D M D).  Minor mode replaces conj(M) by signed
// (n-1)-minors of QMQ, valid on the group {M : M* Q M = Q, det M = 1}.
SepFn sep_invariant_pk(std::size_t k, Mat<GaussRational> D, Mat<GaussRational> Q, ConjMode mode);
SepFn sep_apply(UniPoly p, SepFn arg);
SepFn sep_product(std::vector<SepFn> fs);
SepFn sep_sum(std::vector<SepFn> fs);
SepFn sep_affine(const GaussRational& a, const GaussRational& b, SepFn f);
SepFn sep_div_eps(int k, SepFn f);
SepFn sep_reparam(int t, SepFn f);
SepFn sep_transform(Mat<GaussRational> L, Mat<GaussRational> R, bool sub_identity, int div_k, SepFn f);

EpsLaurent eval_series(const SepFn& f, const SeriesMat& M);
FloatComplex eval_float(const SepFn& f, const Mat<FloatComplex>& M);
// Lagrange arguments within snap of a node take the exact node value.
FloatComplex eval_float_snapped(const SepFn& f, const Mat<FloatComplex>& M, double snap);
// Exact evaluation at an exact matrix (eps-free functions only).
GaussRational eval_exact(const SepFn& f, const Mat<GaussRational>& M);

// Largest total power of eps divided along any path (before reparametrization).
int eps_division_depth(const SepFn& f);

nlohmann::json sep_json(const SepFn& f);

// conj(M) computed as (-1)^(i+j) det((QMQ)_{-i,-j}); both paths must agree on the group.
template <class T>
Mat<T> conj_via_minors(const Mat<T>& M, const Mat<GaussRational>& Q);

}  // namespace liemm
