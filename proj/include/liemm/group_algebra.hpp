#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "liemm/group.hpp"
#include "liemm/linsolve.hpp"

namespace liemm {

struct TppViolation : std::runtime_error {
  explicit TppViolation(const std::string& w) : std::runtime_error("TPP violation: " + w) {}
};
struct SeparationError : std::runtime_error {
  explicit SeparationError(const std::string& w) : std::runtime_error(w) {}
};

// Deduplicating store of group elements with stable first-seen indices.
template <class G>
class ElementIndex {
 public:
  explicit ElementIndex(const G& grp) : grp_(&grp) {}
  // index of g, inserting it if new
  std::size_t intern(const typename G::Elem& g) {
    if (auto k = find(g)) return *k;
    elems_.push_back(g);
    if constexpr (G::hashable) buckets_[grp_->hash(g)].push_back(elems_.size() - 1);
    return elems_.size() - 1;
  }
  std::optional<std::size_t> find(const typename G::Elem& g) const {
    if constexpr (G::hashable) {
      auto it = buckets_.find(grp_->hash(g));
      if (it == buckets_.end()) return std::nullopt;
      for (std::size_t k : it->second)
        if (grp_->equal(elems_[k], g)) return k;
    } else {
      for (std::size_t k = 0; k < elems_.size(); ++k)
        if (grp_->equal(elems_[k], g)) return k;
    }
    return std::nullopt;
  }
  std::size_t size() const { return elems_.size(); }
  const typename G::Elem& operator[](std::size_t k) const { return elems_[k]; }
  const std::vector<typename G::Elem>& elements() const { return elems_; }

 private:
  const G* grp_;
  std::vector<typename G::Elem> elems_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

// (x, y, y', z) index quadruple
using Provenance = std::array<std::size_t, 4>;

template <class G>
struct QuotientSet {
  std::vector<typename G::Elem> elements;
  std::vector<std::vector<Provenance>> provenance;  // parallel to elements
};

// Distinct elements x y^-1 y' z^-1 in first-seen lexicographic order.
template <class G>
QuotientSet<G> quotient_product_set(const G& grp, const std::vector<typename G::Elem>& X,
                                    const std::vector<typename G::Elem>& Y, const std::vector<typename G::Elem>& Z) {
  ElementIndex<G> idx(grp);
  QuotientSet<G> out;
  std::vector<typename G::Elem> yi, zi;
  for (const auto& y : Y) yi.push_back(grp.inv(y));
  for (const auto& z : Z) zi.push_back(grp.inv(z));
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = 0; b < Y.size(); ++b) {
      auto xy = grp.mul(X[a], yi[b]);
      for (std::size_t c = 0; c < Y.size(); ++c) {
        auto xyy = grp.mul(xy, Y[c]);
        for (std::size_t d = 0; d < Z.size(); ++d) {
          std::size_t k = idx.intern(grp.mul(xyy, zi[d]));
          if (k == out.provenance.size()) out.provenance.emplace_back();
          out.provenance[k].push_back({a, b, c, d});
        }
      }
    }
  out.elements = idx.elements();
  return out;
}

// Finitely supported group-algebra element over field F.
template <class G, class F>
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(const G& grp) : grp_(&grp), idx_(grp) {}

  void add(const typename G::Elem& g, const F& c) {
    if (ScalarTraits<F>::is_zero(c)) return;
    std::size_t k = idx_.intern(g);
    if (k == coef_.size()) coef_.push_back(ScalarTraits<F>::zero());
    coef_[k] += c;
  }
  F coeff(const typename G::Elem& g) const {
    auto k = idx_.find(g);
    return k ? coef_[*k] : ScalarTraits<F>::zero();
  }
  // elements with nonzero coefficient
  std::vector<std::pair<typename G::Elem, F>> support() const {
    std::vector<std::pair<typename G::Elem, F>> s;
    for (std::size_t k = 0; k < coef_.size(); ++k)
      if (!ScalarTraits<F>::is_zero(coef_[k])) s.emplace_back(idx_[k], coef_[k]);
    return s;
  }
  bool is_zero() const { return support().empty(); }
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r(*grp_);
    for (const auto& [g, a] : support())
      for (const auto& [h, b] : o.support()) r.add(grp_->mul(g, h), a * b);
    return r;
  }

 private:
  const G* grp_;
  ElementIndex<G> idx_;
  std::vector<F> coef_;
};

template <class G, class F>
struct EmbedReport {
  GroupAlgebraElement<G, F> product;
  Mat<F> extracted;  // coefficient of x z^-1 per (x, z)
  bool matches = false;
  std::size_t residual_support = 0;  // terms off X Z^-1
};

// Abar = sum A[x,y] x y^-1, Bbar = sum B[y,z] y z^-1; extracts (AB)[x,z] at x z^-1.
template <class G, class F>
EmbedReport<G, F> embed_group_algebra(const G& grp, const Mat<F>& A, const Mat<F>& B,
                                      const std::vector<typename G::Elem>& X, const std::vector<typename G::Elem>& Y,
                                      const std::vector<typename G::Elem>& Z) {
  if (A.rows() != X.size() || A.cols() != Y.size() || B.rows() != Y.size() || B.cols() != Z.size())
    throw std::invalid_argument("embed_group_algebra: matrix shapes do not match |X|, |Y|, |Z|");
  std::vector<typename G::Elem> yi, zi;
  for (const auto& y : Y) yi.push_back(grp.inv(y));
  for (const auto& z : Z) zi.push_back(grp.inv(z));
  // targets x z^-1 must be distinct and reached only through y = y'
  ElementIndex<G> targets(grp);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t z = 0; z < Z.size(); ++z) {
      std::size_t k = targets.intern(grp.mul(X[x], zi[z]));
      if (k != x * Z.size() + z)
        throw TppViolation("pairs collide on x z^-1 at (x=" + std::to_string(x) + ", z=" + std::to_string(z) + ")");
    }
  auto Q = quotient_product_set(grp, X, Y, Z);
  for (std::size_t k = 0; k < Q.elements.size(); ++k) {
    auto t = targets.find(Q.elements[k]);
    if (!t) continue;
    std::size_t tx = *t / Z.size(), tz = *t % Z.size();
    for (const auto& p : Q.provenance[k])
      if (p[1] != p[2] || p[0] != tx || p[3] != tz) {
        std::ostringstream os;
        os << "x y^-1 y' z^-1 with (x,y,y',z)=(" << p[0] << "," << p[1] << "," << p[2] << "," << p[3]
           << ") lands on x z^-1 for (x,z)=(" << tx << "," << tz << ")";
        throw TppViolation(os.str());
      }
  }
  GroupAlgebraElement<G, F> abar(grp), bbar(grp);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < Y.size(); ++y) abar.add(grp.mul(X[x], yi[y]), A(x, y));
  for (std::size_t y = 0; y < Y.size(); ++y)
    for (std::size_t z = 0; z < Z.size(); ++z) bbar.add(grp.mul(Y[y], zi[z]), B(y, z));
  EmbedReport<G, F> rep{abar * bbar, Mat<F>(X.size(), Z.size())};
  Mat<F> AB = A * B;
  rep.matches = true;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t z = 0; z < Z.size(); ++z) {
      rep.extracted(x, z) = rep.product.coeff(targets[x * Z.size() + z]);
      if (!(rep.extracted(x, z) == AB(x, z))) rep.matches = false;
    }
  for (const auto& [g, c] : rep.product.support()) {
    if (targets.find(g)) continue;
    ++rep.residual_support;
  }
  return rep;
}

// Matrix representation of a table group: of[g] for every element index g.
template <class F>
struct Representation {
  std::size_t dim = 1;
  std::vector<Mat<F>> of;
};

// The m characters k -> zeta_m^(jk) of Z_m over the cyclotomic field.
std::vector<Representation<Cyclotomic>> cyclic_characters(int m);

// of[a] of[b] == of[a b] and of[e] == I
template <class F>
bool is_homomorphism(const TableGroup& grp, const Representation<F>& r) {
  if (static_cast<int>(r.of.size()) != grp.size()) return false;
  if (!(r.of[static_cast<std::size_t>(grp.identity())] == Mat<F>::identity(r.dim))) return false;
  for (int a = 0; a < grp.size(); ++a)
    for (int b = 0; b < grp.size(); ++b)
      if (!(r.of[a] * r.of[b] == r.of[static_cast<std::size_t>(grp.mul(a, b))])) return false;
  return true;
}

// Coefficient blocks per function: f(g) = sum_rho sum_ij c[rho](i,j) rho(g)(i,j).
template <class F>
using SepCoeffs = std::vector<std::vector<Mat<F>>>;

template <class F>
F eval_sep(const std::vector<Representation<F>>& reps, const std::vector<Mat<F>>& c, int g) {
  F v = ScalarTraits<F>::zero();
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto& m = reps[r].of.at(static_cast<std::size_t>(g));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!ScalarTraits<F>::is_zero(c[r](i, j))) v += c[r](i, j) * m(i, j);
  }
  return v;
}

// Exact solve for every target (values on `support`, one vector per function).
template <class F>
SepCoeffs<F> solve_sep_coefficients(const std::vector<Representation<F>>& reps, const std::vector<int>& support,
                                    const std::vector<std::vector<F>>& targets) {
  std::size_t unknowns = 0;
  for (const auto& r : reps) unknowns += r.dim * r.dim;
  Mat<F> M(support.size(), unknowns);
  for (std::size_t s = 0; s < support.size(); ++s) {
    std::size_t col = 0;
    for (const auto& r : reps) {
      const auto& m = r.of.at(static_cast<std::size_t>(support[s]));
      for (std::size_t i = 0; i < r.dim; ++i)
        for (std::size_t j = 0; j < r.dim; ++j) M(s, col++) = m(i, j);
    }
  }
  Mat<F> T(support.size(), targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t].size() != support.size()) throw std::invalid_argument("target length differs from support size");
    for (std::size_t s = 0; s < support.size(); ++s) T(s, t) = targets[t][s];
  }
  auto sol = solve(M, T);
  if (!sol) throw SeparationError("representative functions do not separate");
  SepCoeffs<F> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::size_t col = 0;
    for (const auto& r : reps) {
      Mat<F> c(r.dim, r.dim);
      for (std::size_t i = 0; i < r.dim; ++i)
        for (std::size_t j = 0; j < r.dim; ++j) c(i, j) = (*sol)(col++, t);
      out[t].push_back(std::move(c));
    }
  }
  return out;
}

// Indicator targets on the quotient set: function (x,z) is 1 at x z^-1.
template <class F>
std::vector<std::vector<F>> indicator_targets(const TableGroup& grp, const std::vector<int>& X,
                                              const std::vector<int>& Z, const std::vector<int>& support) {
  std::vector<std::vector<F>> t;
  for (int x : X)
    for (int z : Z) {
      int g0 = grp.mul(x, grp.inv(z));
      std::vector<F> v;
      for (int g : support) v.push_back(g == g0 ? ScalarTraits<F>::one() : ScalarTraits<F>::zero());
      t.push_back(std::move(v));
    }
  return t;
}

template <class F>
struct RealizeReport {
  bool exact = false;
  Mat<F> recovered;
  Mat<F> direct;
};

// Recovers AB from rho(Abar) rho(Bbar) and the separating coefficients.
template <class F>
RealizeReport<F> realize_algorithm(const TableGroup& grp, const std::vector<int>& X, const std::vector<int>& Y,
                                   const std::vector<int>& Z, const std::vector<Representation<F>>& reps,
                                   const SepCoeffs<F>& coeffs, const Mat<F>& A, const Mat<F>& B) {
  if (coeffs.size() != X.size() * Z.size()) throw std::invalid_argument("need one coefficient set per (x,z)");
  auto Q = quotient_product_set(grp, X, Y, Z);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t z = 0; z < Z.size(); ++z) {
      int target = grp.mul(X[x], grp.inv(Z[z]));
      for (int g : Q.elements) {
        F v = eval_sep(reps, coeffs[x * Z.size() + z], g);
        F want = g == target ? ScalarTraits<F>::one() : ScalarTraits<F>::zero();
        if (!(v == want))
          throw SeparationError("separating property violated at quotient element " + std::to_string(g) +
                                " for (x,z)=(" + std::to_string(x) + "," + std::to_string(z) + ")");
      }
    }
  std::vector<Mat<F>> ra, rb;
  for (const auto& r : reps) {
    Mat<F> a(r.dim, r.dim), b(r.dim, r.dim);
    for (std::size_t x = 0; x < X.size(); ++x)
      for (std::size_t y = 0; y < Y.size(); ++y)
        if (!ScalarTraits<F>::is_zero(A(x, y))) a += r.of[grp.mul(X[x], grp.inv(Y[y]))].scaled(A(x, y));
    for (std::size_t y = 0; y < Y.size(); ++y)
      for (std::size_t z = 0; z < Z.size(); ++z)
        if (!ScalarTraits<F>::is_zero(B(y, z))) b += r.of[grp.mul(Y[y], grp.inv(Z[z]))].scaled(B(y, z));
    ra.push_back(std::move(a));
    rb.push_back(std::move(b));
  }
  RealizeReport<F> rep{false, Mat<F>(X.size(), Z.size()), A * B};
  std::vector<Mat<F>> prod;
  for (std::size_t r = 0; r < reps.size(); ++r) prod.push_back(ra[r] * rb[r]);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t z = 0; z < Z.size(); ++z) {
      F v = ScalarTraits<F>::zero();
      const auto& c = coeffs[x * Z.size() + z];
      for (std::size_t r = 0; r < reps.size(); ++r)
        for (std::size_t i = 0; i < reps[r].dim; ++i)
          for (std::size_t j = 0; j < reps[r].dim; ++j)
            if (!ScalarTraits<F>::is_zero(c[r](i, j))) v += c[r](i, j) * prod[r](i, j);
      rep.recovered(x, z) = v;
    }
  rep.exact = rep.recovered == rep.direct;
  return rep;
}

}  // namespace liemm
