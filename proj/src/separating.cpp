#include "liemm/separating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace liemm {

namespace {

GaussRational indicator(bool b) { return b ? GaussRational(1) : GaussRational(); }

enum class Outcome { Ok, Fail, Inconclusive };

// Checks one evaluated border value against the expected constant term.
Outcome judge(const EpsLaurent& v, bool expect_one, std::string& why) {
  const auto& c = v.raw_coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    int e = v.lo() + static_cast<int>(k);
    if (e >= 0) break;
    if (!c[k].is_zero()) {
      why = "surviving eps^" + std::to_string(e) + " coefficient " + c[k].str();
      return Outcome::Fail;
    }
  }
  if (v.hi() < 0) {
    why = "window ends at eps^" + std::to_string(v.hi()) + " before the constant term";
    return Outcome::Inconclusive;
  }
  GaussRational c0 = v.coeff(0);
  if (c0 != indicator(expect_one)) {
    why = "constant term " + c0.str() + ", expected " + (expect_one ? "1" : "0");
    return Outcome::Fail;
  }
  return Outcome::Ok;
}

std::vector<std::vector<GaussRational>> all_coords(const std::vector<GaussRational>& vals, std::size_t d) {
  std::vector<std::vector<GaussRational>> out;
  std::vector<std::size_t> digit(d, 0);
  while (true) {
    std::vector<GaussRational> v;
    for (std::size_t k = 0; k < d; ++k) v.push_back(vals[digit[k]]);
    out.push_back(std::move(v));
    std::size_t k = d;
    while (k > 0) {
      if (++digit[k - 1] < vals.size()) break;
      digit[k - 1] = 0;
      --k;
    }
    if (k == 0) return out;
  }
}

std::size_t split_size(const LieSplit& s) {
  if (!s.fX.P.empty()) return s.fX.P[0].rows();
  if (!s.fZ.P.empty()) return s.fZ.P[0].rows();
  return 0;
}

// Seeded distinct subset of vals^d, sorted by index so the order is stable.
std::vector<std::vector<GaussRational>> sampled_coords(const std::vector<GaussRational>& vals, std::size_t d,
                                                       std::size_t cap, Rng& g) {
  std::set<std::vector<std::size_t>> picked;
  while (picked.size() < cap) {
    std::vector<std::size_t> w(d);
    for (auto& x : w) x = static_cast<std::size_t>(draw_below(g, vals.size()));
    picked.insert(w);
  }
  std::vector<std::vector<GaussRational>> out;
  for (const auto& w : picked) {
    std::vector<GaussRational> v;
    for (auto k : w) v.push_back(vals[k]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

SepReport verify_separating(const std::vector<SepFn>& family, const std::vector<Mat<GaussRational>>& X,
                            const std::vector<Mat<GaussRational>>& Y, const std::vector<Mat<GaussRational>>& Z) {
  if (family.size() != X.size() * Z.size()) throw std::invalid_argument("separating family must have |X||Z| members");
  if (X.empty() || Y.empty() || Z.empty()) throw std::invalid_argument("empty set in separating check");
  MatrixGroup<GaussRational> grp(X[0].rows());
  auto Q = quotient_product_set(grp, X, Y, Z);
  SepReport rep;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t z = 0; z < Z.size(); ++z) {
      auto target = grp.mul(X[x], grp.inv(Z[z]));
      const SepFn& f = family[x * Z.size() + z];
      for (std::size_t k = 0; k < Q.elements.size(); ++k) {
        ++rep.tuples_checked;
        GaussRational v = eval_exact(f, Q.elements[k]);
        GaussRational want = indicator(Q.elements[k] == target);
        if (v != want) {
          rep.verdict = Verdict::Fail;
          rep.witness = std::vector<std::size_t>{x, z, k};
          rep.note = "f(g) = " + v.str() + ", expected " + want.str();
          return rep;
        }
      }
    }
  return rep;
}

SepReport verify_separating_border(const std::vector<SepFn>& family, const FamilyList& X, const FamilyList& Y,
                                   const FamilyList& Z, int order, const TppOptions& opt) {
  if (family.size() != X.size() * Z.size()) throw std::invalid_argument("separating family must have |X||Z| members");
  if (order < 0) throw std::invalid_argument("border verification needs order >= 0");
  std::size_t nx = X.size(), ny = Y.size(), nz = Z.size();
  if (!nx || !ny || !nz) throw std::invalid_argument("empty set in separating check");
  auto tr = [&](const std::vector<SeriesMat>& v) {
    std::vector<SeriesMat> o;
    for (const auto& m : v) o.push_back(truncate(m, order));
    return o;
  };
  auto xf = tr(X.fam), yf = tr(Y.fam), yi = tr(Y.inv), zi = tr(Z.inv);

  SepReport rep;
  rep.order_used = order;
  std::string first_inconclusive;
  std::vector<std::size_t> inc_witness;
  auto quotient = [&](std::size_t xp, std::size_t y, std::size_t yp, std::size_t zp) {
    auto m = series_mat_mul(xf[xp], yi[y], order);
    m = series_mat_mul(m, yf[yp], order);
    return series_mat_mul(m, zi[zp], order);
  };
  // false stops the scan
  auto check = [&](const std::vector<std::size_t>& w, const SeriesMat& g) {
    ++rep.tuples_checked;
    bool one = w[0] == w[2] && w[1] == w[5] && w[3] == w[4];
    std::string why;
    Outcome o;
    try {
      o = judge(eval_series(family[w[0] * nz + w[1]], g), one, why);
    } catch (const InsufficientOrder& e) {
      o = Outcome::Inconclusive;
      why = e.what();
    } catch (const OffGridValue& e) {
      o = Outcome::Fail;
      why = e.what();
    }
    if (o == Outcome::Fail) {
      rep.verdict = Verdict::Fail;
      rep.witness = w;
      rep.note = why;
      return false;
    }
    if (o == Outcome::Inconclusive && inc_witness.empty()) {
      inc_witness = w;
      first_inconclusive = why;
    }
    return true;
  };

  double total = double(nx) * nz * nx * ny * ny * nz;
  if (detail::use_exhaustive(opt, total)) {
    rep.mode = "exhaustive";
    for (std::size_t xp = 0; xp < nx; ++xp)
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t yp = 0; yp < ny; ++yp)
          for (std::size_t zp = 0; zp < nz; ++zp) {
            auto g = quotient(xp, y, yp, zp);
            for (std::size_t x = 0; x < nx; ++x)
              for (std::size_t z = 0; z < nz; ++z)
                if (!check({x, z, xp, y, yp, zp}, g)) return rep;
          }
  } else {
    rep.mode = "sampled";
    rep.seed = opt.seed;
    Rng g(opt.seed);
    for (std::uint64_t s = 0; s < opt.sample_budget; ++s) {
      std::uint64_t mask = draw_below(g, 8);
      auto x = static_cast<std::size_t>(draw_below(g, nx));
      auto z = static_cast<std::size_t>(draw_below(g, nz));
      auto xp = mask & 1 ? x : static_cast<std::size_t>(draw_below(g, nx));
      auto y = static_cast<std::size_t>(draw_below(g, ny));
      auto yp = mask & 2 ? y : static_cast<std::size_t>(draw_below(g, ny));
      auto zp = mask & 4 ? z : static_cast<std::size_t>(draw_below(g, nz));
      ++rep.strata["stratum" + std::to_string(mask)];
      if (!check({x, z, xp, y, yp, zp}, quotient(xp, y, yp, zp))) return rep;
    }
  }
  if (!inc_witness.empty()) {
    rep.verdict = Verdict::Inconclusive;
    rep.witness = inc_witness;
    rep.note = first_inconclusive;
  }
  return rep;
}

Mat<GaussRational> CoordMap::operator()(const std::vector<GaussRational>& v) const {
  if (v.size() != P.size()) throw std::invalid_argument("coordinate vector has wrong dimension");
  if (P.empty()) throw std::invalid_argument("empty coordinate map has no matrix size");
  Mat<GaussRational> m(P[0].rows(), P[0].cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].re.is_zero()) m += P[k].scaled(GaussRational(v[k].re));
    if (!v[k].im.is_zero()) m += R[k].scaled(GaussRational(v[k].im));
  }
  return m;
}

CoordMap CoordMap::complex_linear(const std::vector<Mat<GaussRational>>& basis) {
  CoordMap f;
  for (const auto& b : basis) {
    f.P.push_back(b);
    f.R.push_back(b.scaled(GaussRational::i()));
  }
  return f;
}

LieSplit disjoint_lie_split(const std::vector<Mat<GaussRational>>& basisX,
                            const std::vector<Mat<GaussRational>>& basisZ) {
  return real_lie_split(CoordMap::complex_linear(basisX), CoordMap::complex_linear(basisZ));
}

LieSplit real_lie_split(CoordMap fX, CoordMap fZ) {
  std::vector<const Mat<GaussRational>*> gens;
  for (const CoordMap* f : {&fX, &fZ}) {
    if (f->R.size() != f->P.size()) throw std::invalid_argument("coordinate map needs real and imaginary parts");
    for (std::size_t k = 0; k < f->dim(); ++k) {
      gens.push_back(&f->P[k]);
      gens.push_back(&f->R[k]);
    }
  }
  if (gens.empty()) throw std::invalid_argument("empty Lie split");
  std::size_t r = gens[0]->rows(), c = gens[0]->cols(), cells = r * c;
  for (auto* g : gens)
    if (g->rows() != r || g->cols() != c) throw std::invalid_argument("Lie basis matrices differ in shape");

  Mat<Rational> real(gens.size(), 2 * cells);
  Mat<GaussRational> A(gens.size(), cells);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t e = 0; e < cells; ++e) {
      const GaussRational& v = gens[k]->data()[e];
      real(k, 2 * e) = v.re;
      real(k, 2 * e + 1) = v.im;
      A(k, e) = v;
    }
  if (rank(real) != gens.size()) throw std::invalid_argument("Lie algebras intersect");

  std::size_t dX = fX.dim(), dZ = fZ.dim();
  Mat<GaussRational> T(gens.size(), dX + dZ);
  for (std::size_t k = 0; k < dX; ++k) {
    T(2 * k, k) = GaussRational(1);
    T(2 * k + 1, k) = GaussRational::i();
  }
  for (std::size_t k = 0; k < dZ; ++k) {
    T(2 * dX + 2 * k, dX + k) = GaussRational(-1);
    T(2 * dX + 2 * k + 1, dX + k) = -GaussRational::i();
  }
  auto W = solve(A, T);
  if (!W) throw std::invalid_argument("no complex-linear coordinate readoff exists");

  LieSplit s;
  for (std::size_t col = 0; col < dX + dZ; ++col) {
    Mat<GaussRational> w(r, c);
    for (std::size_t e = 0; e < cells; ++e) w.data()[e] = (*W)(e, col);
    (col < dX ? s.WX : s.WZ).push_back(w);
    (col < dX ? s.pX : s.pZ).push_back(sep_linear_form(std::move(w)));
  }
  s.fX = std::move(fX);
  s.fZ = std::move(fZ);
  return s;
}

std::size_t split_inverse_failures(const LieSplit& s, const std::vector<GaussRational>& values, std::size_t samples,
                                   Rng& g) {
  if (values.empty()) throw std::invalid_argument("no coordinate values to sample");
  auto draw = [&](std::size_t d) {
    std::vector<GaussRational> v;
    for (std::size_t k = 0; k < d; ++k) {
      const auto& a = values[draw_below(g, values.size())];
      const auto& b = values[draw_below(g, values.size())];
      v.push_back(a + b * GaussRational::i());
    }
    return v;
  };
  std::size_t bad = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    auto v = draw(s.fX.dim()), w = draw(s.fZ.dim());
    Mat<GaussRational> M(split_size(s), split_size(s));
    if (s.fX.dim()) M += s.fX(v);
    if (s.fZ.dim()) M -= s.fZ(w);
    bool ok = true;
    for (std::size_t k = 0; k < v.size(); ++k) ok = ok && eval_exact(s.pX[k], M) == v[k];
    for (std::size_t k = 0; k < w.size(); ++k) ok = ok && eval_exact(s.pZ[k], M) == w[k];
    if (!ok) ++bad;
  }
  return bad;
}

int split_order(int t, const SepFn& p0) {
  return t * std::max(1, eps_division_depth(p0)) + 2;
}

SplitOutput assemble_split(const SplitInputs& in) {
  if (in.q < 1) throw std::invalid_argument("q must be >= 1");
  if (static_cast<std::size_t>(in.q) > in.A.size() || static_cast<std::size_t>(in.q) > in.B.size())
    throw std::invalid_argument("q exceeds the coordinate set size");
  if (!in.p0) throw std::invalid_argument("split needs p0");
  const LieSplit& s = in.split;
  std::size_t dX = s.fX.dim(), dZ = s.fZ.dim();
  if (s.pX.size() != dX || s.pZ.size() != dZ) throw std::invalid_argument("readoff count differs from coordinate dimension");
  std::vector<GaussRational> A(in.A.begin(), in.A.begin() + in.q), B(in.B.begin(), in.B.begin() + in.q);

  Rng g(in.seed);
  std::vector<GaussRational> vals = A;
  vals.insert(vals.end(), B.begin(), B.end());
  if (in.spot_checks && split_inverse_failures(s, vals, in.spot_checks, g))
    throw std::invalid_argument("coordinate readoffs fail the inversion spot check");

  SplitOutput out;
  DegreeReport& d = out.degrees;
  d.deg_p0 = in.p0->degree;
  for (const auto& p : s.pX) {
    d.deg_pX = std::max(d.deg_pX, p->degree);
    d.deg_r += (in.q - 1) * p->degree;
  }
  for (const auto& p : s.pZ) {
    d.deg_pZ = std::max(d.deg_pZ, p->degree);
    d.deg_r += (in.q - 1) * p->degree;
  }
  d.degree_bound = 2L * in.q * static_cast<long>(dX + dZ) * (d.deg_pX + d.deg_pZ);
  if (d.deg_r + 1 > std::numeric_limits<int>::max() / 4) throw std::overflow_error("degree of r too large");
  out.t = in.t_override ? in.t_override : static_cast<int>(d.deg_r) + 1;
  out.order = std::max(in.order_min, split_order(out.t, in.p0));

  out.full_x = std::pow(double(in.q), double(dX));
  out.full_z = std::pow(double(in.q), double(dZ));
  out.a_coords = in.x_cap && out.full_x > double(in.x_cap) ? sampled_coords(A, dX, in.x_cap, g) : all_coords(A, dX);
  out.b_coords = in.z_cap && out.full_z > double(in.z_cap) ? sampled_coords(B, dZ, in.z_cap, g) : all_coords(B, dZ);

  std::size_t n = split_size(s);
  if (!n && !in.Y.empty()) n = in.Y[0].A.rows();
  if (!n) throw std::invalid_argument("cannot infer the matrix size of the split");
  auto I = Mat<GaussRational>::identity(n);
  for (const auto& a : out.a_coords) out.Xfams.push_back(mat_exp_trunc(dX ? s.fX(a) : Mat<GaussRational>(n, n), out.order));
  for (const auto& b : out.b_coords) out.Zfams.push_back(mat_exp_trunc(dZ ? s.fZ(b) : Mat<GaussRational>(n, n), out.order));
  for (const auto& y : in.Y) {
    SeriesMat e = mat_exp_trunc(y.A, out.order, out.t);
    out.Yfams_reparam.push_back(y.C.rows() ? series_mat_mul(to_series(y.C), e, out.order) : e);
  }

  // per-coordinate Lagrange factors shared across (a, b)
  std::vector<std::vector<SepFn>> alpha(dX), beta(dZ);
  for (std::size_t k = 0; k < dX; ++k)
    for (const auto& v : A) alpha[k].push_back(sep_apply(lagrange_indicator(v, A), s.pX[k]));
  for (std::size_t k = 0; k < dZ; ++k)
    for (const auto& v : B) beta[k].push_back(sep_apply(lagrange_indicator(v, B), s.pZ[k]));
  auto pos = [](const std::vector<GaussRational>& set, const GaussRational& v) {
    return static_cast<std::size_t>(std::find(set.begin(), set.end(), v) - set.begin());
  };

  SepFn p0r = sep_reparam(out.t, in.p0);
  for (const auto& a : out.a_coords)
    for (const auto& b : out.b_coords) {
      std::vector<SepFn> fs;
      for (std::size_t k = 0; k < dX; ++k) fs.push_back(alpha[k][pos(A, a[k])]);
      for (std::size_t k = 0; k < dZ; ++k) fs.push_back(beta[k][pos(B, b[k])]);
      SepFn r = sep_product(std::move(fs));
      out.r.push_back(r);
      out.sep.push_back(sep_product({p0r, sep_transform(I, I, true, 1, r)}));
    }
  d.deg_total = out.sep.empty() ? d.deg_p0 : out.sep[0]->degree;
  return out;
}

std::size_t rab_contract_failures(const SplitOutput& out, const LieSplit& s) {
  std::size_t bad = 0, nz = out.b_coords.size();
  std::size_t n = out.Xfams.empty() ? 0 : out.Xfams[0].rows();
  std::vector<Mat<GaussRational>> args;
  for (const auto& a : out.a_coords)
    for (const auto& b : out.b_coords) {
      Mat<GaussRational> M(n, n);
      if (s.fX.dim()) M += s.fX(a);
      if (s.fZ.dim()) M -= s.fZ(b);
      args.push_back(std::move(M));
    }
  for (std::size_t k = 0; k < out.r.size(); ++k)
    for (std::size_t m = 0; m < args.size(); ++m) {
      bool want = out.a_coords[k / nz] == out.a_coords[m / nz] && out.b_coords[k % nz] == out.b_coords[m % nz];
      if (eval_exact(out.r[k], args[m]) != indicator(want)) ++bad;
    }
  return bad;
}

InvarianceAudit audit_invariance(const SepFn& p, const std::vector<SeriesMat>& X, const std::vector<SeriesMat>& Z,
                                 const std::vector<SeriesMat>& Ms, std::size_t samples, Rng& g) {
  InvarianceAudit a;
  if (X.empty() || Z.empty() || Ms.empty()) throw std::invalid_argument("invariance audit needs nonempty sets");
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& x = X[draw_below(g, X.size())];
    const auto& z = Z[draw_below(g, Z.size())];
    const auto& M = Ms[draw_below(g, Ms.size())];
    try {
      EpsLaurent lhs = eval_series(p, series_mat_mul(series_mat_mul(x, M), z));
      EpsLaurent rhs = eval_series(p, M);
      ++a.checked;
      if (lhs.agrees_with(rhs))
        ++a.agreed;
      else if (a.first_failure.empty())
        a.first_failure = "p(xMz) = " + lhs.str() + " but p(M) = " + rhs.str();
    } catch (const InsufficientOrder&) {
      ++a.skipped;
    }
  }
  return a;
}

nlohmann::json degree_json(const DegreeReport& d) {
  return {{"deg_p0", d.deg_p0},       {"deg_r", d.deg_r},   {"deg_total", d.deg_total},
          {"deg_pX", d.deg_pX},       {"deg_pZ", d.deg_pZ}, {"degree_bound", d.degree_bound}};
}

}  // namespace liemm
