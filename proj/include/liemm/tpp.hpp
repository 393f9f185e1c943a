#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "liemm/group.hpp"

namespace liemm {

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_str(Verdict v);
// exit codes of the command-line front end
int verdict_exit_code(Verdict v);
Verdict worst(Verdict a, Verdict b);

struct TppReport {
  Verdict verdict = Verdict::Pass;
  std::optional<std::vector<std::size_t>> witness;  // index tuple
  std::optional<int> order_used;
  std::uint64_t tuples_checked = 0;
  std::optional<std::uint64_t> seed;
  std::string mode = "exhaustive";
  std::string note;
  std::map<std::string, std::uint64_t> strata;
};

enum class SampleMode { Auto, Exhaustive, Sampled };

struct TppOptions {
  SampleMode mode = SampleMode::Auto;
  std::uint64_t sample_budget = 10000;
  std::uint64_t seed = 1;
  std::uint64_t exhaustive_cap = 10000000;  // auto mode threshold on tuple count
};

namespace detail {

inline bool use_exhaustive(const TppOptions& o, double tuples) {
  if (o.mode == SampleMode::Exhaustive) return true;
  if (o.mode == SampleMode::Sampled) return false;
  return tuples <= static_cast<double>(o.exhaustive_cap);
}

// Draw one index pair per set size.  The stratum is a bitmask of pairs
// forced equal, uniform over all masks except the full one (mask 0 is the
// plain uniform draw).
std::vector<std::size_t> draw_tuple(Rng& g, const std::vector<std::size_t>& sizes, std::uint64_t& stratum);

template <class G>
struct PairTable {
  std::vector<typename G::Elem> v;
  std::size_t n = 0;
  const typename G::Elem& at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

}  // namespace detail

// Product x x'^-1 y y'^-1 z z'^-1 for index tuple w.
template <class G>
typename G::Elem tpp_product(const G& grp, const std::vector<typename G::Elem>& X, const std::vector<typename G::Elem>& Y,
                             const std::vector<typename G::Elem>& Z, const std::vector<std::size_t>& w) {
  auto p = grp.mul(X.at(w[0]), grp.inv(X.at(w[1])));
  p = grp.mul(p, Y.at(w[2]));
  p = grp.mul(p, grp.inv(Y.at(w[3])));
  p = grp.mul(p, Z.at(w[4]));
  return grp.mul(p, grp.inv(Z.at(w[5])));
}

// x^-1 x' z^-1 z'
template <class G>
typename G::Elem dpp_product(const G& grp, const std::vector<typename G::Elem>& X, const std::vector<typename G::Elem>& Z,
                             const std::vector<std::size_t>& w) {
  auto p = grp.mul(grp.inv(X.at(w[0])), X.at(w[1]));
  p = grp.mul(p, grp.inv(Z.at(w[2])));
  return grp.mul(p, Z.at(w[3]));
}

template <class G>
void check_distinct(const G& grp, const std::vector<typename G::Elem>& S, const char* name) {
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (grp.equal(S[i], S[j]))
        throw std::invalid_argument(std::string("duplicate element in ") + name + ": indices " + std::to_string(j) +
                                    " and " + std::to_string(i));
}

namespace detail {

// Shared engine: condition a_{ij} * b_{kl} == c_{mp} must force i=j, k=l,
// m=p.  `A`, `B`, `C` are pair tables; the violating tuple is reported as
// (i,j,k,l,m,p) in lexicographic order.
template <class G>
std::optional<std::vector<std::size_t>> first_violation(const G& grp, const PairTable<G>& A, const PairTable<G>* B,
                                                        const PairTable<G>& C) {
  std::size_t nb = B ? B->n : 1;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  if constexpr (G::hashable) {
    for (std::size_t k = 0; k < C.v.size(); ++k) buckets[grp.hash(C.v[k])].push_back(k);
  }
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t j = 0; j < A.n; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          typename G::Elem ab = B ? grp.mul(A.at(i, j), B->at(k, l)) : A.at(i, j);
          bool lhs_trivial = i == j && k == l;
          auto test = [&](std::size_t c) -> std::optional<std::vector<std::size_t>> {
            std::size_t m = c / C.n, p = c % C.n;
            if (lhs_trivial && m == p) return std::nullopt;
            if (!grp.equal(ab, C.v[c])) return std::nullopt;
            if (B) return std::vector<std::size_t>{i, j, k, l, m, p};
            return std::vector<std::size_t>{i, j, m, p};
          };
          if constexpr (G::hashable) {
            auto it = buckets.find(grp.hash(ab));
            if (it == buckets.end()) continue;
            for (std::size_t c : it->second)
              if (auto w = test(c)) return w;
          } else {
            for (std::size_t c = 0; c < C.v.size(); ++c)
              if (auto w = test(c)) return w;
          }
        }
  return std::nullopt;
}

}  // namespace detail

// Triple product property for exact (or tolerance-tagged) elements.
template <class G>
TppReport verify_tpp(const G& grp, const std::vector<typename G::Elem>& X, const std::vector<typename G::Elem>& Y,
                     const std::vector<typename G::Elem>& Z, const TppOptions& opt = {}) {
  check_distinct(grp, X, "X");
  check_distinct(grp, Y, "Y");
  check_distinct(grp, Z, "Z");
  TppReport rep;
  double total = std::pow(static_cast<double>(X.size()) * Y.size() * Z.size(), 2);
  if (detail::use_exhaustive(opt, total)) {
    using PT = detail::PairTable<G>;
    auto build = [&](const std::vector<typename G::Elem>& S, bool swap) {
      PT t;
      t.n = S.size();
      std::vector<typename G::Elem> inv;
      for (const auto& s : S) inv.push_back(grp.inv(s));
      for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) t.v.push_back(swap ? grp.mul(S[j], inv[i]) : grp.mul(S[i], inv[j]));
      return t;
    };
    // x x'^-1 y y'^-1 = z' z^-1
    PT A = build(X, false), B = build(Y, false), C = build(Z, true);
    rep.tuples_checked = static_cast<std::uint64_t>(total);
    if (auto w = detail::first_violation(grp, A, &B, C)) {
      rep.verdict = Verdict::Fail;
      rep.witness = w;
    }
    return rep;
  }
  rep.mode = "sampled";
  rep.seed = opt.seed;
  Rng g(opt.seed);
  std::vector<std::size_t> sizes{X.size(), Y.size(), Z.size()};
  for (std::uint64_t s = 0; s < opt.sample_budget; ++s) {
    std::uint64_t stratum = 0;
    auto w = detail::draw_tuple(g, sizes, stratum);
    ++rep.strata["stratum" + std::to_string(stratum)];
    ++rep.tuples_checked;
    bool all_eq = w[0] == w[1] && w[2] == w[3] && w[4] == w[5];
    if (all_eq) continue;
    if (grp.is_identity(tpp_product(grp, X, Y, Z, w))) {
      rep.verdict = Verdict::Fail;
      rep.witness = w;
      return rep;
    }
  }
  return rep;
}

// Double product property: x^-1 x' z^-1 z' = 1 iff x = x' and z = z'.
template <class G>
TppReport verify_dpp(const G& grp, const std::vector<typename G::Elem>& X, const std::vector<typename G::Elem>& Z,
                     const TppOptions& opt = {}) {
  check_distinct(grp, X, "X");
  check_distinct(grp, Z, "Z");
  TppReport rep;
  double total = std::pow(static_cast<double>(X.size()) * Z.size(), 2);
  if (detail::use_exhaustive(opt, total)) {
    using PT = detail::PairTable<G>;
    PT A, C;
    A.n = X.size();
    C.n = Z.size();
    std::vector<typename G::Elem> xi, zi;
    for (const auto& x : X) xi.push_back(grp.inv(x));
    for (const auto& z : Z) zi.push_back(grp.inv(z));
    // x^-1 x' = (z^-1 z')^-1 = z'^-1 z
    for (std::size_t i = 0; i < A.n; ++i)
      for (std::size_t j = 0; j < A.n; ++j) A.v.push_back(grp.mul(xi[i], X[j]));
    for (std::size_t m = 0; m < C.n; ++m)
      for (std::size_t p = 0; p < C.n; ++p) C.v.push_back(grp.mul(zi[p], Z[m]));
    rep.tuples_checked = static_cast<std::uint64_t>(total);
    if (auto w = detail::first_violation<G>(grp, A, nullptr, C)) {
      rep.verdict = Verdict::Fail;
      rep.witness = w;
    }
    return rep;
  }
  rep.mode = "sampled";
  rep.seed = opt.seed;
  Rng g(opt.seed);
  std::vector<std::size_t> sizes{X.size(), Z.size()};
  for (std::uint64_t s = 0; s < opt.sample_budget; ++s) {
    std::uint64_t stratum = 0;
    auto w = detail::draw_tuple(g, sizes, stratum);
    ++rep.strata["stratum" + std::to_string(stratum)];
    ++rep.tuples_checked;
    if (w[0] == w[1] && w[2] == w[3]) continue;
    if (grp.is_identity(dpp_product(grp, X, Z, w))) {
      rep.verdict = Verdict::Fail;
      rep.witness = w;
      return rep;
    }
  }
  return rep;
}

// Series mode.  Iterative deepening over orders 1, 2, 4, ..., order: a
// tuple is certified as soon as the product differs from I at some
// exponent within the current order.
TppReport verify_tpp_series(const FamilyList& X, const FamilyList& Y, const FamilyList& Z, int order,
                            const TppOptions& opt = {});
TppReport verify_dpp_series(const FamilyList& X, const FamilyList& Z, int order, const TppOptions& opt = {});

// Product x x'^-1 y y'^-1 z z'^-1 of families, capped at `order`.
SeriesMat tpp_product_series(const FamilyList& X, const FamilyList& Y, const FamilyList& Z,
                             const std::vector<std::size_t>& w, int order);

}  // namespace liemm
