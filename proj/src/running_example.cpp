#include "liemm/running_example.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace liemm {

namespace {

constexpr double kEnumLimit = 1e7;

// All tuples in {0..base-1}^len in lexicographic order, or a sorted seeded
// subset of size cap when there are more than cap.
std::vector<std::vector<std::size_t>> index_tuples(const std::vector<std::size_t>& radix, std::size_t cap, Rng& g) {
  double total = 1;
  for (auto r : radix) total *= double(r);
  std::vector<std::vector<std::size_t>> out;
  if (total == 0) return out;
  if (cap == 0 || total <= double(cap)) {
    if (total > kEnumLimit) throw std::invalid_argument("set too large to enumerate; pass a cap");
    std::vector<std::size_t> t(radix.size(), 0);
    while (true) {
      out.push_back(t);
      std::size_t k = t.size();
      while (k > 0) {
        --k;
        if (++t[k] < radix[k]) break;
        t[k] = 0;
        if (k == 0) return out;
      }
      if (t.empty()) return out;
    }
  }
  std::set<std::vector<std::size_t>> seen;
  while (seen.size() < cap) {
    std::vector<std::size_t> t;
    for (auto r : radix) t.push_back(static_cast<std::size_t>(draw_below(g, r)));
    seen.insert(std::move(t));
  }
  return {seen.begin(), seen.end()};
}

std::vector<GaussRational> one_to_q(int q) {
  std::vector<GaussRational> v;
  for (int k = 1; k <= q; ++k) v.emplace_back(k);
  return v;
}

SepFn running_sep(int n, int q, const Mat<GaussRational>& x, const Mat<GaussRational>& z, const UniPoly& r) {
  auto nodes = one_to_q(q);
  auto P = Mat<GaussRational>::identity(n), R = P;
  std::vector<SepFn> levels;
  for (int k = 0; k < n; ++k) {
    std::vector<SepFn> fs{sep_apply(r, sep_entry(k, k))};
    for (int i = k + 1; i < n; ++i) fs.push_back(sep_apply(lagrange_indicator(x(i, k), nodes), sep_entry(i, k)));
    for (int j = k + 1; j < n; ++j) fs.push_back(sep_apply(lagrange_indicator(z(k, j), nodes), sep_entry(k, j)));
    levels.push_back(sep_transform(P, R, false, 0, sep_product(std::move(fs))));
    // peel column k of x and row k of z
    auto xi = Mat<GaussRational>::identity(n), zi = xi;
    for (int i = k + 1; i < n; ++i) xi(i, k) = -x(i, k);
    for (int j = k + 1; j < n; ++j) zi(k, j) = -z(k, j);
    P = xi * P;
    R = R * zi;
  }
  return sep_product(std::move(levels));
}

std::vector<GaussRational> as_gauss(const std::vector<Rational>& W) {
  return {W.begin(), W.end()};
}

double nearest_distance(const std::vector<double>& sorted, double v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  double d = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) d = std::min(d, std::abs(*it - v));
  if (it != sorted.begin()) d = std::min(d, std::abs(*(it - 1) - v));
  return d;
}

Mat<FloatComplex> float_of(const Mat<GaussRational>& m) { return to_float(m); }

}  // namespace

UnitriangularSets build_unitriangular_sets(int n, int q, std::size_t cap, std::uint64_t seed) {
  if (n < 2 || q < 1) throw std::invalid_argument("unitriangular sets need n >= 2 and q >= 1");
  std::vector<std::pair<int, int>> pos;
  for (int j = 0; j < n; ++j)
    for (int i = j + 1; i < n; ++i) pos.emplace_back(i, j);
  Rng g(seed);
  UnitriangularSets s;
  s.full_count = std::pow(double(q), double(pos.size()));
  auto tuples = index_tuples(std::vector<std::size_t>(pos.size(), static_cast<std::size_t>(q)), cap, g);
  for (const auto& t : tuples) {
    auto x = Mat<GaussRational>::identity(n);
    for (std::size_t k = 0; k < pos.size(); ++k) x(pos[k].first, pos[k].second) = GaussRational(long(t[k] + 1));
    s.Z.push_back(transpose(x));
    s.X.push_back(std::move(x));
  }
  return s;
}

UnitVectorSet popular_bucket(int dim, long entry_max) {
  if (dim < 1 || entry_max < 1) throw std::invalid_argument("bucket needs dim >= 1 and a positive range");
  double total = std::pow(double(entry_max + 1), double(dim));
  if (total > kEnumLimit) throw std::invalid_argument("vector enumeration exceeds the limit");
  std::map<long, std::size_t> count;
  std::vector<long> v(dim, 0);
  auto bump = [&]() {
    for (int k = dim; k-- > 0;) {
      if (++v[k] <= entry_max) return true;
      v[k] = 0;
    }
    return false;
  };
  auto len2 = [&]() {
    long s = 0;
    for (long e : v) s += e * e;
    return s;
  };
  while (bump()) ++count[len2()];
  if (count.empty()) throw std::invalid_argument("empty length bucket");
  UnitVectorSet out;
  out.dim = dim;
  std::size_t best = 0;
  for (const auto& [l, c] : count)
    if (c > best) {
      best = c;
      out.len2 = l;
    }
  std::fill(v.begin(), v.end(), 0);
  while (bump())
    if (len2() == out.len2) out.vecs.push_back(v);
  return out;
}

Mat<FloatComplex> completion_basis(const std::vector<std::vector<double>>& cols, int n) {
  std::vector<std::vector<double>> basis = cols;
  std::vector<bool> used(n, false);
  std::size_t need = n - cols.size();
  std::vector<std::vector<double>> out;
  auto project_out = [&](std::vector<double>& r) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        double d = 0;
        for (int k = 0; k < n; ++k) d += b[k] * r[k];
        for (int k = 0; k < n; ++k) r[k] -= d * b[k];
      }
  };
  while (out.size() < need) {
    int best = -1;
    double best_norm = -1;
    std::vector<double> best_r;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      std::vector<double> r(n, 0.0);
      r[j] = 1;
      project_out(r);
      double nr = 0;
      for (double e : r) nr += e * e;
      if (nr > best_norm) {
        best_norm = nr;
        best = j;
        best_r = std::move(r);
      }
    }
    if (best < 0 || best_norm < 1e-20) throw std::runtime_error("orthonormal completion degenerated");
    used[best] = true;
    double s = std::sqrt(best_norm);
    for (double& e : best_r) e /= s;
    basis.push_back(best_r);
    out.push_back(std::move(best_r));
  }
  Mat<FloatComplex> B(n, need);
  for (std::size_t c = 0; c < need; ++c)
    for (int k = 0; k < n; ++k) B(k, c) = out[c][k];
  return B;
}

OrthogonalFamily build_orthogonal_family(int n, int q, std::size_t cap, std::uint64_t seed) {
  if (n < 2 || q < 2) throw std::invalid_argument("orthogonal family needs n >= 2 and q >= 2");
  OrthogonalFamily f;
  f.n = n;
  f.q = q;
  f.entry_max = 4L * q;
  std::set<Rational> W;
  for (int d = 1; d <= n; ++d) {
    UnitVectorSet V = d == 1 ? UnitVectorSet{1, 1, {{1}}} : popular_bucket(d, f.entry_max);
    // nonnegative entries keep every dot product in [0, len2]
    std::vector<bool> seen(static_cast<std::size_t>(V.len2) + 1, false);
    for (const auto& u : V.vecs)
      for (const auto& v : V.vecs) {
        long dot = 0;
        for (int k = 0; k < d; ++k) dot += u[k] * v[k];
        seen[static_cast<std::size_t>(dot)] = true;
      }
    for (long dot = 0; dot <= V.len2; ++dot)
      if (seen[static_cast<std::size_t>(dot)]) W.insert(Rational(dot, V.len2));
    f.V.push_back(std::move(V));
  }
  f.W.assign(W.begin(), W.end());

  std::vector<std::size_t> radix;
  f.full_count = 1;
  for (int k = 0; k < n; ++k) {
    radix.push_back(f.V[n - k - 1].vecs.size());
    f.full_count *= double(radix.back());
  }
  Rng g(seed);
  f.picks = index_tuples(radix, cap, g);
  for (const auto& pick : f.picks) {
    std::vector<std::vector<double>> cols;
    for (int k = 0; k < n; ++k) {
      const auto& V = f.V[n - k - 1];
      Mat<FloatComplex> B = completion_basis(cols, n);
      const auto& v = V.vecs[pick[k]];
      double s = std::sqrt(double(V.len2));
      std::vector<double> c(n, 0.0);
      for (int r = 0; r < n; ++r)
        for (int m = 0; m < V.dim; ++m) c[r] += B(r, m).real() * double(v[m]) / s;
      cols.push_back(std::move(c));
    }
    Mat<FloatComplex> y(n, n);
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r) y(r, k) = cols[k][r];
    f.Y.push_back(std::move(y));
  }
  return f;
}

ColumnAgreementReport verify_column_agreement(const OrthogonalFamily& f, double tol) {
  ColumnAgreementReport rep;
  std::vector<double> w;
  for (const auto& v : f.W) w.push_back(v.to_double());
  std::size_t n = static_cast<std::size_t>(f.n);
  for (std::size_t a = 0; a < f.Y.size(); ++a)
    for (std::size_t b = a; b < f.Y.size(); ++b) {
      ++rep.pairs;
      std::size_t prefix = 0;
      while (prefix < n && f.picks[a][prefix] == f.picks[b][prefix]) ++prefix;
      for (std::size_t i = 0; i <= std::min(prefix, n - 1); ++i) {
        double dot = 0;
        for (std::size_t r = 0; r < n; ++r) dot += f.Y[a](r, i).real() * f.Y[b](r, i).real();
        double dev = nearest_distance(w, dot);
        ++rep.comparisons;
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > tol) {
          if (!rep.failures) {
            std::ostringstream os;
            os << "pair (" << a << "," << b << ") agreeing in " << i << " columns: (y^T y')[" << i << "," << i
               << "] = " << dot << " is " << dev << " from W";
            rep.first_failure = os.str();
          }
          ++rep.failures;
        }
      }
    }
  return rep;
}

SepFn build_running_sep_family(int n, int q, const Mat<GaussRational>& x, const Mat<GaussRational>& z,
                               const std::vector<Rational>& W) {
  return running_sep(n, q, x, z, lagrange_indicator(GaussRational(1), as_gauss(W)));
}

RunningSepCheck check_running_separation(const UnitriangularSets& s, const OrthogonalFamily& f, std::size_t samples,
                                         double tol, Rng& g) {
  RunningSepCheck rep;
  UniPoly r = lagrange_indicator(GaussRational(1), as_gauss(f.W));
  for (std::size_t k = 0; k < samples; ++k) {
    std::uint64_t mask = draw_below(g, 8);
    std::size_t x = draw_below(g, s.X.size()), z = draw_below(g, s.Z.size()), y = draw_below(g, f.Y.size());
    std::size_t xp = mask & 1 ? x : draw_below(g, s.X.size());
    std::size_t yp = mask & 2 ? y : draw_below(g, f.Y.size());
    std::size_t zp = mask & 4 ? z : draw_below(g, s.Z.size());
    Mat<FloatComplex> M = float_of(s.X[xp]) * transpose(f.Y[y]) * f.Y[yp] * float_of(s.Z[zp]);
    SepFn p = running_sep(f.n, f.q, s.X[x], s.Z[z], r);
    FloatComplex v = eval_float_snapped(p, M, 1e-8);
    bool want = xp == x && yp == y && zp == z;
    double raw = std::abs(eval_float(p, M) - FloatComplex(want ? 1.0 : 0.0));
    if (!(raw <= tol)) ++rep.raw_mismatches;
    rep.raw_max_error = std::max(rep.raw_max_error, std::isfinite(raw) ? raw : HUGE_VAL);
    double err = std::abs(v - FloatComplex(want ? 1.0 : 0.0));
    ++rep.evaluated;
    double& worst = want ? rep.max_error_one : rep.max_error_zero;
    worst = std::max(worst, err);
    if (err > tol) {
      if (!rep.mismatches) {
        std::ostringstream os;
        os << "p_{" << x << "," << z << "} at (x',y,y',z')=(" << xp << "," << y << "," << yp << "," << zp
           << ") = " << v.real() << (v.imag() >= 0 ? "+" : "") << v.imag() << "i, want " << want;
        rep.first_mismatch = os.str();
      }
      ++rep.mismatches;
    }
  }
  return rep;
}

LpmExpansionReport lpm_expansion_check(const Mat<Rational>& A, const Mat<Rational>& B) {
  std::size_t n = A.rows();
  if (!A.square() || B.rows() != n || !B.square()) throw std::invalid_argument("lpm check needs square matrices");
  if (!(transpose(A) == -A) || !(transpose(B) == -B)) throw std::invalid_argument("lpm check needs skew-symmetric A, B");
  SeriesMat M = series_mat_mul(mat_exp_trunc(A, 3), series_mat_inv(mat_exp_trunc(B, 3)), 3);
  LpmExpansionReport rep;
  Mat<Rational> C = A - B;
  rep.per_j_ok = true;
  for (std::size_t j = 1; j <= n; ++j) {
    EpsLaurent l = lpm(M, j);
    Rational want;
    for (std::size_t i = 0; i < j; ++i)
      for (std::size_t ip = j; ip < n; ++ip) want -= C(i, ip) * C(i, ip) / Rational(2);
    if (!(l.coeff(0) == GaussRational(1)) || !l.coeff(1).is_zero() || !(l.coeff(2) == GaussRational(want)) ||
        l.hi() < 2)
      rep.per_j_ok = false;
    rep.sum += l;
    rep.lpm.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = i + 1; ip < n; ++ip)
      rep.expected_c2 -= Rational(long(ip - i)) * C(i, ip) * C(i, ip) / Rational(2);
  GaussRational c2 = rep.sum.coeff(2);
  rep.c2 = c2.re;
  rep.c0_ok = rep.sum.coeff(0) == GaussRational(long(n));
  rep.c1_ok = rep.sum.coeff(1).is_zero();
  rep.c2_ok = rep.sum.hi() >= 2 && c2.is_real() && c2.re == rep.expected_c2;
  return rep;
}

Mat<Rational> random_skew_symmetric(int n, long lo, long hi, Rng& g) {
  Mat<Rational> A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v(draw_range(g, lo, hi));
      A(i, j) = v;
      A(j, i) = -v;
    }
  return A;
}

RunningBorder running_border_p0(int n, int q, std::size_t cap, std::uint64_t seed, int order) {
  if (n < 2 || q < 1) throw std::invalid_argument("running border p0 needs n >= 2 and q >= 1");
  if (order < 2) throw std::invalid_argument("order must be at least 2");
  RunningBorder rb;
  rb.n = n;
  rb.q = q;
  rb.order = order;
  long h = q / 2, wmax = 2 * h;
  long spread = 0;
  for (int i = 0; i < n; ++i)
    for (int ip = i + 1; ip < n; ++ip) spread += ip - i;
  rb.K = spread * wmax * wmax;
  rb.delta = Rational(1, 2);
  rb.grid_bound = 1 + static_cast<long>(n - 1) * n * n * q * q / 4;
  rb.deviations.push_back(
      "sign correction: p0 argument is (n - sum_j lpm_j(M))/eps^2; the form (-n - sum_j lpm_j(M))/eps^2 has a "
      "nonvanishing eps^-2 term since sum_j lpm_j(M) = n + O(eps^2)");
  UniPoly r = grid_indicator(rb.delta, rb.K);
  rb.p0 = sep_apply(r, sep_div_eps(2, sep_affine(GaussRational(-1), GaussRational(n), sep_sum_lpm(n))));

  std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
  rb.full_count = std::pow(double(2 * h + 1), double(m));
  Rng g(seed);
  auto tuples = index_tuples(std::vector<std::size_t>(m, static_cast<std::size_t>(2 * h + 1)), cap, g);
  for (const auto& t : tuples) {
    Mat<Rational> A(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k) {
        Rational v(long(t[k]) - h);
        A(i, j) = v;
        A(j, i) = -v;
      }
    rb.Yfams.push_back(mat_exp_trunc(A, order));
    rb.A.push_back(std::move(A));
  }
  return rb;
}

BorderIndicatorReport check_border_indicator(const SepFn& p0, const std::vector<SeriesMat>& Yfams,
                                             std::size_t unequal_pairs, Rng& g) {
  BorderIndicatorReport rep;
  std::vector<SeriesMat> inv;
  for (const auto& y : Yfams) inv.push_back(series_mat_inv(y));
  auto judge = [&](std::size_t a, std::size_t b) {
    bool want = a == b;
    std::string why;
    try {
      EpsLaurent v = eval_series(p0, series_mat_mul(inv[a], Yfams[b]));
      if (v.hi() < 0) {
        ++rep.inconclusive;
        return;
      }
      for (int e = v.lo(); e < 0; ++e)
        if (!v.coeff(e).is_zero()) why = "surviving eps^" + std::to_string(e) + " term in " + v.str();
      if (why.empty() && !(v.coeff(0) == GaussRational(want ? 1 : 0))) why = "value " + v.str();
    } catch (const InsufficientOrder&) {
      ++rep.inconclusive;
      return;
    }
    if (!why.empty()) {
      if (!rep.failures) rep.first_failure = "pair (" + std::to_string(a) + "," + std::to_string(b) + "): " + why;
      ++rep.failures;
    }
  };
  for (std::size_t a = 0; a < Yfams.size(); ++a) {
    judge(a, a);
    ++rep.equal_checked;
  }
  if (Yfams.size() < 2) return rep;
  for (std::size_t k = 0; k < unequal_pairs; ++k) {
    std::size_t a = draw_below(g, Yfams.size());
    std::size_t b = draw_below(g, Yfams.size() - 1);
    if (b >= a) ++b;
    judge(a, b);
    ++rep.unequal_checked;
  }
  return rep;
}

std::vector<Mat<GaussRational>> strictly_lower_basis(int n) {
  std::vector<Mat<GaussRational>> b;
  for (int j = 0; j < n; ++j)
    for (int i = j + 1; i < n; ++i) {
      Mat<GaussRational> E(n, n);
      E(i, j) = 1;
      b.push_back(std::move(E));
    }
  return b;
}

std::vector<Mat<GaussRational>> strictly_upper_basis(int n) {
  auto b = strictly_lower_basis(n);
  for (auto& E : b) E = transpose(E);
  return b;
}

nlohmann::json orthogonal_family_json(const OrthogonalFamily& f) {
  nlohmann::json V = nlohmann::json::array();
  for (const auto& v : f.V) V.push_back({{"dim", v.dim}, {"len2", v.len2}, {"size", v.vecs.size()}});
  return {{"n", f.n},
          {"q", f.q},
          {"entry_range", {0, f.entry_max}},
          {"V", V},
          {"W_size", f.W.size()},
          {"W_over_q2", f.w_constant()},
          {"Y_size", f.Y.size()},
          {"Y_full_count", f.full_count}};
}

}  // namespace liemm
