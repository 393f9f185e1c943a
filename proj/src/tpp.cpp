#include "liemm/tpp.hpp"

#include <algorithm>

namespace liemm {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 3;
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

namespace detail {

std::vector<std::size_t> draw_tuple(Rng& g, const std::vector<std::size_t>& sizes, std::uint64_t& stratum) {
  std::uint64_t masks = (std::uint64_t(1) << sizes.size()) - 1;  // excludes the full mask
  stratum = draw_below(g, masks);
  std::vector<std::size_t> w;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    auto a = static_cast<std::size_t>(draw_below(g, sizes[k]));
    auto b = (stratum >> k & 1) ? a : static_cast<std::size_t>(draw_below(g, sizes[k]));
    w.push_back(a);
    w.push_back(b);
  }
  return w;
}

}  // namespace detail

namespace {

std::vector<int> ladder(int order) {
  std::vector<int> l;
  for (int k = 1; k < order; k *= 2) l.push_back(k);
  l.push_back(std::max(order, 0));
  return l;
}

// Families and inverses truncated at each rung of the deepening ladder.
struct Truncations {
  std::vector<int> orders;
  std::vector<std::vector<SeriesMat>> fam, inv;

  Truncations(const FamilyList& F, const std::vector<int>& l) : orders(l) {
    for (int k : l) {
      std::vector<SeriesMat> f, i;
      for (std::size_t a = 0; a < F.size(); ++a) {
        f.push_back(truncate(F.fam[a], k));
        i.push_back(truncate(F.inv[a], k));
      }
      fam.push_back(std::move(f));
      inv.push_back(std::move(i));
    }
  }
};

// Outcome of probing one tuple: certified at some order, or the window top
// reached without finding a nonzero coefficient of P - I.
struct Probe {
  bool certified;
  int order;
};

template <class F>
Probe deepen(const std::vector<int>& l, F product) {
  int seen = -1;
  for (std::size_t r = 0; r < l.size(); ++r) {
    SeriesMat P = product(r);
    auto pr = probe_identity(P, l[r]);
    seen = std::max(seen, pr.examined_through);
    if (pr.first_nonzero) return {true, *pr.first_nonzero};
    if (pr.examined_through < l[r]) break;  // family windows exhausted
  }
  return {false, seen};
}

}  // namespace

SeriesMat tpp_product_series(const FamilyList& X, const FamilyList& Y, const FamilyList& Z,
                             const std::vector<std::size_t>& w, int order) {
  SeriesMat p = series_mat_mul(X.fam.at(w[0]), X.inv.at(w[1]), order);
  p = series_mat_mul(p, Y.fam.at(w[2]), order);
  p = series_mat_mul(p, Y.inv.at(w[3]), order);
  p = series_mat_mul(p, Z.fam.at(w[4]), order);
  return series_mat_mul(p, Z.inv.at(w[5]), order);
}

TppReport verify_tpp_series(const FamilyList& X, const FamilyList& Y, const FamilyList& Z, int order,
                            const TppOptions& opt) {
  if (order < 1) throw std::invalid_argument("series verification needs order >= 1");
  auto l = ladder(order);
  Truncations tx(X, l), ty(Y, l), tz(Z, l);
  TppReport rep;
  int deepest = 0;
  auto check = [&](const std::vector<std::size_t>& w) {
    ++rep.tuples_checked;
    if (w[0] == w[1] && w[2] == w[3] && w[4] == w[5]) return true;
    Probe pr = deepen(l, [&](std::size_t r) {
      int k = l[r];
      SeriesMat p = series_mat_mul(tx.fam[r][w[0]], tx.inv[r][w[1]], k);
      p = series_mat_mul(p, ty.fam[r][w[2]], k);
      p = series_mat_mul(p, ty.inv[r][w[3]], k);
      p = series_mat_mul(p, tz.fam[r][w[4]], k);
      return series_mat_mul(p, tz.inv[r][w[5]], k);
    });
    if (pr.certified) {
      deepest = std::max(deepest, pr.order);
      return true;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.witness = w;
    rep.order_used = pr.order;
    rep.note = "product equals I through the examined window";
    return false;
  };
  double total = std::pow(static_cast<double>(X.size()) * Y.size() * Z.size(), 2);
  if (detail::use_exhaustive(opt, total)) {
    std::vector<std::size_t> w(6);
    for (w[0] = 0; w[0] < X.size(); ++w[0])
      for (w[1] = 0; w[1] < X.size(); ++w[1])
        for (w[2] = 0; w[2] < Y.size(); ++w[2])
          for (w[3] = 0; w[3] < Y.size(); ++w[3])
            for (w[4] = 0; w[4] < Z.size(); ++w[4])
              for (w[5] = 0; w[5] < Z.size(); ++w[5])
                if (!check(w)) return rep;
  } else {
    rep.mode = "sampled";
    rep.seed = opt.seed;
    Rng g(opt.seed);
    std::vector<std::size_t> sizes{X.size(), Y.size(), Z.size()};
    for (std::uint64_t s = 0; s < opt.sample_budget; ++s) {
      std::uint64_t stratum = 0;
      auto w = detail::draw_tuple(g, sizes, stratum);
      ++rep.strata["stratum" + std::to_string(stratum)];
      if (!check(w)) return rep;
    }
  }
  rep.order_used = deepest;
  return rep;
}

TppReport verify_dpp_series(const FamilyList& X, const FamilyList& Z, int order, const TppOptions& opt) {
  if (order < 1) throw std::invalid_argument("series verification needs order >= 1");
  auto l = ladder(order);
  Truncations tx(X, l), tz(Z, l);
  TppReport rep;
  int deepest = 0;
  auto check = [&](const std::vector<std::size_t>& w) {
    ++rep.tuples_checked;
    if (w[0] == w[1] && w[2] == w[3]) return true;
    Probe pr = deepen(l, [&](std::size_t r) {
      int k = l[r];
      SeriesMat p = series_mat_mul(tx.inv[r][w[0]], tx.fam[r][w[1]], k);
      p = series_mat_mul(p, tz.inv[r][w[2]], k);
      return series_mat_mul(p, tz.fam[r][w[3]], k);
    });
    if (pr.certified) {
      deepest = std::max(deepest, pr.order);
      return true;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.witness = w;
    rep.order_used = pr.order;
    rep.note = "product equals I through the examined window";
    return false;
  };
  double total = std::pow(static_cast<double>(X.size()) * Z.size(), 2);
  if (detail::use_exhaustive(opt, total)) {
    std::vector<std::size_t> w(4);
    for (w[0] = 0; w[0] < X.size(); ++w[0])
      for (w[1] = 0; w[1] < X.size(); ++w[1])
        for (w[2] = 0; w[2] < Z.size(); ++w[2])
          for (w[3] = 0; w[3] < Z.size(); ++w[3])
            if (!check(w)) return rep;
  } else {
    rep.mode = "sampled";
    rep.seed = opt.seed;
    Rng g(opt.seed);
    std::vector<std::size_t> sizes{X.size(), Z.size()};
    for (std::uint64_t s = 0; s < opt.sample_budget; ++s) {
      std::uint64_t stratum = 0;
      auto w = detail::draw_tuple(g, sizes, stratum);
      ++rep.strata["stratum" + std::to_string(stratum)];
      if (!check(w)) return rep;
    }
  }
  rep.order_used = deepest;
  return rep;
}

}  // namespace liemm
