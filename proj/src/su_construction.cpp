#include "liemm/su_construction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "liemm/instance_io.hpp"

namespace liemm {

namespace {

Mat<GaussRational> half(const Mat<GaussRational>& m) { return m.scaled(GaussRational(Rational(1, 2))); }

SeriesMat smul(const SeriesMat& a, const SeriesMat& b) { return series_mat_mul(a, b); }

bool block_diagonal(const Mat<GaussRational>& A, std::size_t h) {
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if ((i < h) != (j < h) && !A(i, j).is_zero()) return false;
  return true;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

long to_long_checked(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit in a machine integer");
  return z.get_si();
}

// Quadratic form of c in the real coordinates (Re a_1, Im a_1, ...).
Mat<Rational> c_gram(const SuConstruction& su) {
  std::size_t m = su.S_basis.size(), n = su.n;
  std::vector<Mat<GaussRational>> Cs;
  Mat<GaussRational> zero(n, n);
  for (const auto& b : su.S_basis) Cs.push_back(su_C(su, b, zero));
  Mat<Rational> G(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Rational w = su.dsq[i] - su.dsq[j];
          G(k, l) += w * w * (Cs[k](i, j).conj() * Cs[l](i, j)).re;
        }
  return G;
}

Rational quad(const Mat<Rational>& G, const std::vector<long>& v) {
  Rational s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    Rational row;
    for (std::size_t l = 0; l < v.size(); ++l)
      if (v[l]) row += G(k, l) * Rational(v[l]);
    s += Rational(v[k]) * row;
  }
  return s;
}

std::vector<GaussRational> coords_from_real(const std::vector<long>& v) {
  std::vector<GaussRational> a;
  for (std::size_t k = 0; k + 1 < v.size(); k += 2) a.emplace_back(Rational(v[k]), Rational(v[k + 1]));
  return a;
}

}  // namespace

int su_complex_dim(int n) { return n * n / 4 - n / 2; }

std::vector<Mat<GaussRational>> su_S_basis(int n) {
  if (n % 2) throw std::invalid_argument("S needs even n");
  std::size_t h = n / 2;
  std::vector<Mat<GaussRational>> out;
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t i = b * h; i < (b + 1) * h; ++i)
      for (std::size_t j = i + 1; j < (b + 1) * h; ++j) {
        Mat<GaussRational> P(n, n), R(n, n);
        P(i, j) = 1;
        P(j, i) = -1;
        R(i, j) = GaussRational::i();
        R(j, i) = GaussRational::i();
        out.push_back(std::move(P));
        out.push_back(std::move(R));
      }
  return out;
}

SuConstruction su_build(int n) {
  if (n % 2 || n < 4) throw std::invalid_argument("SU(n/2,n/2) construction needs even n >= 4");
  SuConstruction su;
  su.n = n;
  std::size_t h = n / 2;
  su.Q = Mat<GaussRational>(n, n);
  su.J = Mat<GaussRational>(h, h);
  su.W = Mat<GaussRational>(n, n);
  std::vector<GaussRational> d0;
  for (std::size_t i = 0; i < h; ++i) {
    su.Q(i, i) = 1;
    su.Q(h + i, h + i) = -1;
    su.J(h - 1 - i, i) = 1;
    su.W(i, i) = 1;
    su.W(h + i, h + i) = -1;
    su.W(i, h + h - 1 - i) = 1;
    su.W(h + h - 1 - i, i) = 1;
  }
  for (std::size_t i = 0; i < h; ++i) d0.emplace_back(long(n - i));
  for (std::size_t i = 0; i < h; ++i) d0.emplace_back(Rational(1, long(h + 1 + i)));
  su.D0 = Mat<GaussRational>::diag(d0);
  std::vector<GaussRational> d0inv;
  for (const auto& d : d0) {
    d0inv.push_back(d.inv());
    su.dsq.push_back(d.norm2());
  }
  Mat<GaussRational> Wt = transpose(su.W);
  su.D = half(su.W * su.D0 * Wt);
  su.Dinv = half(su.W * Mat<GaussRational>::diag(d0inv) * Wt);
  if (!(su.D * su.Dinv == Mat<GaussRational>::identity(n))) throw std::logic_error("D inverse mismatch");

  su.DQD_ok = conj_transpose(su.D) * su.Q * su.D == su.Q;
  su.det_ok = det(su.D) == GaussRational(1);
  Mat<GaussRational> UQU = half(Wt * su.Q * su.W), want(n, n);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      want(i, h + j) = su.J(i, j);
      want(h + i, j) = su.J(i, j);
    }
  su.UQU_ok = UQU == want;
  if (!su.DQD_ok || !su.det_ok || !su.UQU_ok) throw std::logic_error("D is not an element of SU(n/2,n/2)");

  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t i = b * h; i < (b + 1) * h; ++i)
      for (std::size_t j = i + 1; j < (b + 1) * h; ++j) su.positions.emplace_back(i, j);
  su.S_basis = su_S_basis(n);
  Mat<GaussRational> DsD = conj_transpose(su.D) * su.D;
  su.trace_DsD2 = trace(DsD * DsD).re;
  return su;
}

long su_lattice_radius(int q) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  // ceil(sqrt(q)/2) = smallest m with 4 m^2 >= q
  long m = 0;
  while (4 * m * m < q) ++m;
  return m;
}

std::vector<GaussRational> su_lattice_values(int q) {
  long m = su_lattice_radius(q);
  std::vector<GaussRational> v;
  for (long a = -m; a <= m; ++a)
    for (long b = -m; b <= m; ++b) v.emplace_back(Rational(a), Rational(b));
  return v;
}

Mat<GaussRational> su_tau(const SuConstruction& su, const std::vector<GaussRational>& a) {
  if (a.size() != su.positions.size()) throw std::invalid_argument("tau needs one coordinate per position");
  Mat<GaussRational> A(su.n, su.n);
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto [i, j] = su.positions[k];
    A(i, j) = a[k];
    A(j, i) = -a[k].conj();
  }
  return A;
}

bool in_S(const SuConstruction& su, const Mat<GaussRational>& A) {
  if (!(conj_transpose(A) == -A) || !block_diagonal(A, su.n / 2)) return false;
  for (int i = 0; i < su.n; ++i)
    if (!A(i, i).is_zero()) return false;
  return true;
}

TraceInvariant su_trace_invariant(const SeriesMat& M, const SuConstruction& su) {
  SeriesMat D = to_series(su.D), Ds = to_series(conj_transpose(su.D));
  SeriesMat lhs = smul(smul(Ds, conj_transpose(M)), Ds);
  SeriesMat rhs = smul(smul(D, M), D);
  TraceInvariant t;
  t.direct = trace(smul(lhs, rhs));
  t.via_minors = eval_series(sep_invariant_pk(1, su.D, su.Q, ConjMode::Minor), M);
  t.agree = t.direct.agrees_with(t.via_minors);
  return t;
}

GaussRational su_trace_invariant_exact(const Mat<GaussRational>& M, const SuConstruction& su) {
  Mat<GaussRational> Ds = conj_transpose(su.D);
  return trace(Ds * conj_transpose(M) * Ds * su.D * M * su.D);
}

Mat<GaussRational> su_C(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B) {
  return half(transpose(su.W) * (A - B) * su.W);
}

Rational su_c_exact(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B) {
  Mat<GaussRational> C = su_C(su, A, B);
  Rational c;
  for (int i = 0; i < su.n; ++i)
    for (int j = i + 1; j < su.n; ++j) {
      Rational w = su.dsq[i] - su.dsq[j];
      c += w * w * C(i, j).norm2();
    }
  return c;
}

Eps2Report su_eps2_check(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B) {
  if (!(conj_transpose(A) == -A) || !(conj_transpose(B) == -B))
    throw std::invalid_argument("eps^2 check needs skew-Hermitian A, B");
  SeriesMat M = series_mat_mul(mat_exp_trunc(A, 3), series_mat_inv(mat_exp_trunc(B, 3)), 3);
  SeriesMat D = to_series(su.D), Ds = to_series(conj_transpose(su.D));
  EpsLaurent p = trace(smul(smul(smul(Ds, conj_transpose(M)), Ds), smul(smul(D, M), D)));
  Eps2Report r;
  r.c0 = p.coeff(0);
  r.c1 = p.coeff(1);
  r.c2 = p.coeff(2);
  r.closed_form = -su_c_exact(su, A, B);
  r.c0_ok = r.c0 == GaussRational(su.trace_DsD2);
  r.c1_ok = r.c1.is_zero();
  r.c2_ok = p.hi() >= 2 && r.c2 == GaussRational(r.closed_form);
  Mat<GaussRational> C = su_C(su, A, B);
  r.C_diagonal = true;
  for (int i = 0; i < su.n; ++i)
    for (int j = 0; j < su.n; ++j)
      if (i != j && !C(i, j).is_zero()) r.C_diagonal = false;
  return r;
}

CReport su_c_value(const SuConstruction& su, const Mat<GaussRational>& A, const Mat<GaussRational>& B) {
  CReport r;
  r.c = su_c_exact(su, A, B);
  mpz_class f = factorial(static_cast<unsigned long>(su.n));
  Rational scaled = r.c * Rational(mpz_class(2 * f * f));
  if (!scaled.is_integer()) throw NonIntegralC("c = " + r.c.str() + ", 2(n!)^2 c = " + scaled.str());
  r.cTimes2nFactSq = scaled.num();
  r.isZero = r.c.is_zero();
  return r;
}

SuP0 su_p0(const SuConstruction& su, int q) {
  SuP0 out;
  Mat<Rational> G = c_gram(su);
  std::size_t m = G.rows();
  mpz_class L = 1;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k; l < m; ++l) L = lcm_z(L, (k == l ? G(k, k) : G(k, l) * Rational(2)).den());
  out.L = to_long_checked(L, "grid denominator");
  mpz_class f = factorial(static_cast<unsigned long>(su.n));
  out.claimed_scale = to_long_checked(2 * f * f, "2(n!)^2");
  out.claimed_scale_divides = out.claimed_scale % out.L == 0;

  long r = 2 * su_lattice_radius(q);  // differences of lattice coordinates
  double count = std::pow(double(2 * r + 1), double(m));
  if (count <= 2e5) {
    out.c_max_exact = true;
    std::vector<long> v(m, -r);
    std::size_t cross = 0;
    while (true) {
      Rational c = quad(G, v);
      if (!(c * Rational(out.L)).is_integer()) throw std::logic_error("c value off the 1/L lattice");
      if (cross < 64 && std::any_of(v.begin(), v.end(), [](long e) { return e != 0; })) {
        // independent route through C = U^*(A-B)U
        if (su_c_exact(su, su_tau(su, coords_from_real(v)), Mat<GaussRational>(su.n, su.n)) != c)
          throw std::logic_error("quadratic form of c disagrees with the direct formula");
        ++cross;
      }
      if (c > out.c_max) out.c_max = c;
      ++out.differences;
      std::size_t k = m;
      while (k > 0 && v[k - 1] == r) v[--k] = -r;
      if (k == 0) break;
      ++v[k - 1];
    }
  } else {
    Rational s;
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) s += abs(G(k, l));
    out.c_max = s * Rational(r * r);
  }
  Rational KL = out.c_max * Rational(out.L);
  mpz_class Kz = KL.num() / KL.den();
  if (Kz * KL.den() != KL.num()) Kz += 1;
  out.K = to_long_checked(Kz, "grid size");
  UniPoly g = grid_indicator(Rational(1, out.L), out.K);
  out.p0 = sep_apply(g, sep_div_eps(2, sep_affine(GaussRational(-1), GaussRational(su.trace_DsD2),
                                                     sep_invariant_pk(1, su.D, su.Q, ConjMode::Minor))));
  return out;
}

SuSplit su_theta_psi(const SuConstruction& su) {
  CoordMap fX, fZ;
  for (std::size_t k = 0; k < su.positions.size(); ++k) {
    const auto& P = su.S_basis[2 * k];
    const auto& R = su.S_basis[2 * k + 1];
    fX.P.push_back(su.Dinv * P * su.D);
    fX.R.push_back(su.Dinv * R * su.D);
    fZ.P.push_back(su.D * P * su.Dinv);
    fZ.R.push_back(su.D * R * su.Dinv);
  }
  SuSplit s;
  std::size_t n2 = static_cast<std::size_t>(su.n) * su.n;
  std::vector<const Mat<GaussRational>*> gens;
  for (const CoordMap* f : {&fX, &fZ})
    for (std::size_t k = 0; k < f->dim(); ++k) {
      gens.push_back(&f->P[k]);
      gens.push_back(&f->R[k]);
    }
  // theta(a, b) = fX(a) - fZ(b); the sign does not change the rank
  Mat<Rational> real(gens.size(), 2 * n2);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t e = 0; e < n2; ++e) {
      real(k, 2 * e) = gens[k]->data()[e].re;
      real(k, 2 * e + 1) = gens[k]->data()[e].im;
    }
  s.real_rank = rank(real);
  s.real_dim = gens.size();
  if (s.real_rank != s.real_dim)
    throw std::logic_error("theta is rank deficient: " + std::to_string(s.real_rank) + " < " +
                           std::to_string(s.real_dim));
  s.split = real_lie_split(std::move(fX), std::move(fZ));
  return s;
}

SuAssembleReport su_assemble(const SuAssembleOptions& opt) {
  SuAssembleReport rep;
  rep.opt = opt;
  if (opt.q < 1) throw std::invalid_argument("q must be >= 1");
  SuConstruction su = su_build(opt.n);
  rep.p0 = su_p0(su, opt.q);
  SuSplit sp = su_theta_psi(su);
  rep.real_rank = sp.real_rank;

  SplitInputs in;
  in.split = sp.split;
  in.p0 = opt.planted_constant_p0 ? sep_const(GaussRational(1)) : rep.p0.p0;
  in.q = opt.q;
  for (int k = 0; k < opt.q; ++k) {
    in.A.emplace_back(k);
    in.B.emplace_back(k);
  }
  in.order_min = opt.order;
  in.seed = opt.seed;

  std::size_t d = su.positions.size();
  auto vals = su_lattice_values(opt.q);
  rep.full_y = std::pow(double(vals.size()), double(d));
  Rng g(opt.seed ^ 0x5eedULL);
  std::vector<std::vector<std::size_t>> picks;
  if (rep.full_y <= double(opt.y_cap)) {
    std::vector<std::size_t> t(d, 0);
    while (true) {
      picks.push_back(t);
      std::size_t k = d;
      while (k > 0 && t[k - 1] + 1 == vals.size()) t[--k] = 0;
      if (k == 0) break;
      ++t[k - 1];
    }
  } else {
    std::set<std::vector<std::size_t>> seen;
    while (seen.size() < opt.y_cap) {
      std::vector<std::size_t> t;
      for (std::size_t k = 0; k < d; ++k) t.push_back(draw_below(g, vals.size()));
      seen.insert(std::move(t));
    }
    picks.assign(seen.begin(), seen.end());
  }
  for (const auto& t : picks) {
    std::vector<GaussRational> a;
    for (auto k : t) a.push_back(vals[k]);
    in.Y.push_back({Mat<GaussRational>(), su_tau(su, a)});
  }

  rep.out = assemble_split(in);
  FamilyList X(rep.out.Xfams, "X"), Y(rep.out.Yfams_reparam, "Y"), Z(rep.out.Zfams, "Z");
  TppOptions topt;
  topt.mode = opt.mode;
  topt.sample_budget = opt.sample_budget;
  topt.seed = opt.seed;
  topt.exhaustive_cap = opt.sample_budget;
  rep.tpp = verify_tpp_series(X, Y, Z, rep.out.order, topt);
  rep.sep = verify_separating_border(rep.out.sep, X, Y, Z, rep.out.order, topt);
  rep.verdict = worst(rep.tpp.verdict, rep.sep.verdict);

  rep.exponent_num = su_complex_dim(opt.n);
  double target = std::pow(double(opt.q), double(rep.exponent_num));
  rep.sizes_ok = rep.out.full_x >= target && rep.out.full_z >= target && rep.full_y >= target;
  const DegreeReport& dg = rep.out.degrees;
  rep.degree_identity = dg.deg_total == dg.deg_p0 + dg.deg_r;
  return rep;
}

nlohmann::json su_assemble_json(const SuAssembleReport& r) {
  const auto& o = r.opt;
  nlohmann::json j;
  j["construction"] = {{"group", "SU(" + std::to_string(o.n / 2) + "," + std::to_string(o.n / 2) + ")"},
                       {"n", o.n},
                       {"q", o.q},
                       {"complex_dim_X", r.exponent_num},
                       {"complex_dim_Z", r.exponent_num},
                       {"lattice_radius", su_lattice_radius(o.q)},
                       {"theta_real_rank", r.real_rank},
                       {"planted_constant_p0", o.planted_constant_p0}};
  j["cardinalities"] = {{"X", r.out.Xfams.size()},
                        {"Y", r.out.Yfams_reparam.size()},
                        {"Z", r.out.Zfams.size()},
                        {"X_full", r.out.full_x},
                        {"Y_full", r.full_y},
                        {"Z_full", r.out.full_z},
                        {"size_exponent", "n^2/4 - n/2"},
                        {"target", std::pow(double(o.q), double(r.exponent_num))},
                        {"sizes_ok", r.sizes_ok}};
  nlohmann::json deg = degree_json(r.out.degrees);
  deg["grid_K"] = r.p0.K;
  deg["grid_quantum"] = "1/" + std::to_string(r.p0.L);
  deg["c_max"] = r.p0.c_max.str();
  deg["c_max_exact"] = r.p0.c_max_exact;
  deg["deg_identity_ok"] = r.degree_identity;
  deg["t"] = r.out.t;
  deg["order"] = r.out.order;
  j["degrees"] = deg;
  j["c_normalization"] = {{"claimed_scale", r.p0.claimed_scale},
                          {"measured_denominator", r.p0.L},
                          {"claimed_scale_clears_denominators", r.p0.claimed_scale_divides}};
  j["tpp"] = tpp_report_json(r.tpp);
  j["separating"] = tpp_report_json(r.sep);
  j["verdict"] = verdict_str(r.verdict);
  return j;
}

Mat<FloatComplex> random_unitary(int n, Rng& g) {
  std::vector<std::vector<FloatComplex>> cols;
  for (int c = 0; c < n; ++c) {
    std::vector<FloatComplex> v(n);
    for (auto& e : v) e = FloatComplex(draw_normal(g), draw_normal(g));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : cols) {
        FloatComplex d{};
        for (int k = 0; k < n; ++k) d += std::conj(b[k]) * v[k];
        for (int k = 0; k < n; ++k) v[k] -= d * b[k];
      }
    double nr = 0;
    for (const auto& e : v) nr += std::norm(e);
    nr = std::sqrt(nr);
    for (auto& e : v) e /= nr;
    cols.push_back(std::move(v));
  }
  Mat<FloatComplex> U(n, n);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) U(k, c) = cols[c][k];
  return U;
}

KvnReport kvn_inequality_check(int n, std::size_t trials, double tol, std::uint64_t seed) {
  SuConstruction su = su_build(n);
  Mat<FloatComplex> D = to_float(su.D), Ds = conj_transpose(D);
  auto value = [&](const Mat<FloatComplex>& M) { return trace(Ds * conj_transpose(M) * Ds * D * M * D).real(); };
  double bound = trace(Ds * D * Ds * D).real();
  KvnReport rep;
  Rng g(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    double excess = value(random_unitary(n, g)) - bound;
    rep.max_excess = std::max(rep.max_excess, excess);
    if (excess > tol) ++rep.violations;
    ++rep.trials;
  }
  Mat<FloatComplex> U = to_float(su.W).scaled(FloatComplex(1 / std::sqrt(2.0), 0));
  const FloatComplex phases[4] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  std::vector<FloatComplex> dg;
  for (int k = 0; k < n; ++k) dg.push_back(phases[k % 4]);
  Mat<FloatComplex> M = U * Mat<FloatComplex>::diag(dg) * conj_transpose(U);
  rep.planted_error = std::abs(value(M) - bound);
  rep.identity_error = std::abs(value(Mat<FloatComplex>::identity(n)) - bound);
  return rep;
}

Mat<GaussRational> su_random_lattice(const SuConstruction& su, int q, Rng& g) {
  long m = su_lattice_radius(q);
  std::vector<GaussRational> a;
  for (std::size_t k = 0; k < su.positions.size(); ++k)
    a.emplace_back(Rational(draw_range(g, -m, m)), Rational(draw_range(g, -m, m)));
  return su_tau(su, a);
}

nlohmann::json su_construction_json(const SuConstruction& su) {
  nlohmann::json dsq = nlohmann::json::array(), pos = nlohmann::json::array();
  for (const auto& d : su.dsq) dsq.push_back(d.str());
  for (auto [i, j] : su.positions) pos.push_back({i, j});
  return {{"n", su.n},
          {"Q", matrix_json(su.Q)},
          {"W", matrix_json(su.W)},
          {"D0", matrix_json(su.D0)},
          {"D", matrix_json(su.D)},
          {"abs_d_squared", dsq},
          {"coordinate_positions", pos},
          {"complex_dim", su_complex_dim(su.n)},
          {"S_real_dim", su.S_basis.size()},
          {"trace_DsD_squared", su.trace_DsD2.str()},
          {"checks", {{"DstarQD_eq_Q", su.DQD_ok}, {"det_D_eq_1", su.det_ok}, {"UstarQU_eq_0JJ0", su.UQU_ok}}}};
}

}  // namespace liemm
