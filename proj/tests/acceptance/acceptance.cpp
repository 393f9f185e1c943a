// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "liemm/cli.hpp"
#include "liemm/group.hpp"
#include "liemm/group_algebra.hpp"
#include "liemm/repdim.hpp"
#include "liemm/running_example.hpp"
#include "liemm/su_construction.hpp"
#include "liemm/tpp.hpp"

using namespace liemm;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    else if (detail.size() < 400) detail += "; " + why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

mpz_class ipow(long b, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "liemm");
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

// ---------------------------------------------------------------- 1
Outcome c1_representation_identity() {
  Outcome r;
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int s = 0; s <= 6; ++s) {
      mpz_class want;
      mpz_bin_uiui(want.get_mpz_t(), static_cast<unsigned long>(s + n * n), static_cast<unsigned long>(n * n));
      // direct sum over partitions with at most n parts
      mpz_class direct = 0;
      for (int i = 0; i <= s; ++i)
        for (const auto& lam : partitions_of(i, n)) {
          mpz_class d = weyl_dim(lam, n);
          direct += d * d;
        }
      if (direct != want) r.fail("n=" + std::to_string(n) + " s=" + std::to_string(s) + " got " + direct.get_str());
      if (sum_dim_squares(s, n) != want) r.fail("sum_dim_squares disagrees at n=" + std::to_string(n));
      ++checked;
    }
  double secs = seconds_since(t0);
  if (secs >= 10) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass) r.detail = std::to_string(checked) + " (n,s) pairs exact, " + fmt(secs) + " s";
  return r;
}

// ---------------------------------------------------------------- 2
Outcome c2_dimension_bound() {
  Outcome r;
  int checked = 0;
  for (int n = 3; n <= 5; ++n)
    for (int s = 2; s <= 10; ++s) {
      mpz_class m = max_dim(s, n).dim, b = ipow(s, n * (n - 1) / 2);
      if (m > b) r.fail("max_dim(" + std::to_string(s) + "," + std::to_string(n) + ")=" + m.get_str());
      // exhaustive maximum as a cross-check
      mpz_class best = 0;
      for (int i = 0; i <= s; ++i)
        for (const auto& lam : partitions_of(i, n)) best = std::max(best, weyl_dim(lam, n));
      if (best != m) r.fail("max_dim mismatch at s=" + std::to_string(s) + " n=" + std::to_string(n));
      ++checked;
    }
  for (int n = 2; n <= 4; ++n)
    for (int d = 1; d <= 3; ++d) {
      Partition lam;
      for (int i = 1; i <= n; ++i) lam.push_back(d * (n - i));
      if (weyl_dim(lam, n) != ipow(d + 1, n * (n - 1) / 2))
        r.fail("staircase d=" + std::to_string(d) + " n=" + std::to_string(n));
      ++checked;
    }
  if (r.pass) r.detail = std::to_string(checked) + " exact integer checks";
  return r;
}

// ---------------------------------------------------------------- 3
Outcome c3_omega_calculator() {
  Outcome r;
  double w = omega_bound(OmegaInputs{8, 8, 8, 64, 2, false});
  if (std::abs(w - 2.0) > 1e-12) r.fail("V=8,D=64,dmax=2 gave " + fmt(w));
  for (double v : {2.0, 1.5}) {
    try {
      omega_bound(OmegaInputs{v, v, v, 64, 2, false});
      r.fail("V=" + fmt(v) + " <= dmax gave a bound");
    } catch (const NoBound&) {
    }
  }
  double worst = 0;
  for (int n : {2, 3, 4})
    for (int s : {10000, 1000000}) {  // dmax^2 <= D needs s >~ 2140 at n = 4
      double ls = std::log(double(s)), c2 = n * (n - 1) / 2.0;
      for (double e : {0.6, 0.75}) {  // each set has size s^(e n^2)
        double each = e * n * n * ls;
        double c = corollary_bound(3 * e * n * n, s, n);
        OmegaInputs in{each, each, each, log_mpz(binomial(static_cast<unsigned long>(s + n * n), static_cast<unsigned long>(n * n))),
                       c2 * ls, true};
        worst = std::max(worst, std::abs(c - omega_bound(in)));
      }
    }
  if (worst > 1e-6) r.fail("corollary/omega disagreement " + fmt(worst));
  if (r.pass) r.detail = "omega=2 exact, no-bound raised, max cross-route gap " + fmt(worst);
  return r;
}

// ---------------------------------------------------------------- 4
Outcome c4_finite_group() {
  Outcome r;
  auto t0 = std::chrono::steady_clock::now();
  auto g = TableGroup::cyclic(5);
  auto reps = cyclic_characters(5);
  std::vector<int> X{0, 1, 2, 3, 4}, Y{0}, Z{0};
  auto Q = quotient_product_set(g, X, Y, Z);
  auto coeffs = solve_sep_coefficients(reps, Q.elements, indicator_targets<Cyclotomic>(g, X, Z, Q.elements));
  Rng rng(2024);
  int exact = 0;
  for (int t = 0; t < 20; ++t) {
    Mat<Cyclotomic> A(5, 1), B(1, 1);
    for (auto& e : A.data()) e = Cyclotomic(static_cast<int>(draw_range(rng, -20, 20)));
    B(0, 0) = Cyclotomic(static_cast<int>(draw_range(rng, -20, 20)));
    auto rep = realize_algorithm(g, X, Y, Z, reps, coeffs, A, B);
    // independent product
    bool same = true;
    for (int k = 0; k < 5; ++k) same = same && rep.recovered(k, 0) == A(k, 0) * B(0, 0);
    if (rep.exact && same) ++exact;
  }
  double secs = seconds_since(t0);
  if (exact != 20) r.fail(std::to_string(exact) + "/20 exact");
  if (secs >= 5) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass) r.detail = "20/20 products recovered exactly, " + fmt(secs) + " s";
  return r;
}

// ---------------------------------------------------------------- 5
Outcome c5_running_tpp() {
  Outcome r;
  auto sets = build_unitriangular_sets(3, 2);
  auto fam = build_orthogonal_family(3, 2, 4, 5);
  if (sets.X.size() != 8 || sets.Z.size() != 8 || fam.Y.size() != 4) r.fail("unexpected set sizes");
  FloatMatGroup G(3, 1e-9);
  std::vector<Mat<FloatComplex>> X, Z;
  for (const auto& x : sets.X) X.push_back(to_float(x));
  for (const auto& z : sets.Z) Z.push_back(to_float(z));
  TppOptions opt;
  opt.mode = SampleMode::Exhaustive;
  auto rep = verify_tpp(G, X, fam.Y, Z, opt);
  if (rep.verdict != Verdict::Pass) r.fail("clean sets: " + std::string(verdict_str(rep.verdict)));
  if (rep.mode != "exhaustive") r.fail("not exhaustive");
  auto Y = fam.Y;
  Y[2] = X[6] * float_inverse(X[1]) * Y[0];
  auto bad = verify_tpp(G, X, Y, Z, opt);
  if (bad.verdict != Verdict::Fail || !bad.witness) {
    r.fail("planted violation not detected");
  } else {
    auto prod = tpp_product(G, X, Y, Z, *bad.witness);
    if (!G.is_identity(prod)) r.fail("witness does not multiply to I");
  }
  if (r.pass) r.detail = "|X|=|Z|=8, |Y|=4, " + std::to_string(rep.tuples_checked) + " tuples; planted witness found";
  return r;
}

// ---------------------------------------------------------------- 6
Outcome c6_lpm_expansion() {
  Outcome r;
  auto t0 = std::chrono::steady_clock::now();
  Rng g(66);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 4;
    auto A = random_skew_symmetric(n, -3, 3, g), B = random_skew_symmetric(n, -3, 3, g);
    auto rep = lpm_expansion_check(A, B);
    Rational want;
    for (int i = 0; i < n; ++i)
      for (int ip = i + 1; ip < n; ++ip) {
        Rational d = A(i, ip) - B(i, ip);
        want -= Rational(ip - i) * d * d / Rational(2);
      }
    bool ok = rep.sum.coeff(0) == GaussRational(n) && rep.sum.coeff(1).is_zero() && rep.sum.coeff(2) == GaussRational(want);
    if (!ok || !rep.ok()) r.fail("pair " + std::to_string(t) + " at n=" + std::to_string(n));
  }
  double secs = seconds_since(t0);
  if (secs >= 10) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass) r.detail = "20 pairs, n in 2..5, coefficients exact, " + fmt(secs) + " s";
  return r;
}

// ---------------------------------------------------------------- 7
Outcome c7_su_identities() {
  Outcome r;
  auto su = su_build(4);
  auto Ds = conj_transpose(su.D);
  if (!(Ds * su.Q * su.D == su.Q)) r.fail("D*QD != Q");
  if (!(det(su.D) == GaussRational(1))) r.fail("det D != 1");

  Rng g(77);
  int eps_ok = 0;
  for (int t = 0; t < 20; ++t) {
    auto A = su_random_lattice(su, 4, g), B = su_random_lattice(su, 4, g);
    auto rep = su_eps2_check(su, A, B);
    auto E = A - B, DsD = Ds * su.D;
    auto c2 = -trace(DsD * conj_transpose(E) * E * DsD) + trace(Ds * conj_transpose(E) * Ds * su.D * E * su.D);
    if (rep.ok() && rep.c2 == c2 && GaussRational(rep.closed_form) == c2) ++eps_ok;
  }
  if (eps_ok != 20) r.fail("eps^2 identity " + std::to_string(eps_ok) + "/20");

  int zero_ok = 0, integral = 0;
  std::string first_nonint;
  for (int t = 0; t < 100; ++t) {
    auto A = su_random_lattice(su, 4, g);
    auto B = t % 5 == 0 ? A : su_random_lattice(su, 4, g);
    Rational c = su_c_exact(su, A, B);
    if (c.is_zero() == (A == B)) ++zero_ok;
    try {
      auto cr = su_c_value(su, A, B);
      if (cr.isZero == (A == B)) ++integral;
    } catch (const NonIntegralC&) {
      if (first_nonint.empty()) first_nonint = "c=" + c.str();
    }
  }
  if (zero_ok != 100) r.fail("c zero-iff-equal " + std::to_string(zero_ok) + "/100");
  if (integral != 100)
    r.fail("2(n!)^2 c integral on " + std::to_string(integral) + "/100 pairs (first " + first_nonint + ")");

  int dual_ok = 0, dual_total = 0;
  Rng h(78);
  for (int t = 0; t < 4; ++t) {
    auto A = su_random_lattice(su, 2, h), B = su_random_lattice(su, 2, h), C = su_random_lattice(su, 2, h);
    SeriesMat x = mat_exp_trunc(su.Dinv * A * su.D, 4), y = mat_exp_trunc(B, 4), z = mat_exp_trunc(su.D * C * su.Dinv, 4);
    for (const SeriesMat& M : {x, y, z, series_mat_mul(series_mat_mul(x, y, 4), z, 4)}) {
      ++dual_total;
      auto ti = su_trace_invariant(M, su);
      auto a = conj_entries(M), b = conj_via_minors(M, su.Q);
      bool same = ti.agree;
      for (std::size_t e = 0; e < a.data().size(); ++e) same = same && a.data()[e].agrees_with(b.data()[e]);
      if (same) ++dual_ok;
    }
  }
  if (dual_ok != dual_total) r.fail("dual path " + std::to_string(dual_ok) + "/" + std::to_string(dual_total));
  if (r.pass) r.detail = "all sub-checks exact";
  return r;
}

// ---------------------------------------------------------------- 8
Outcome c8_kvn() {
  Outcome r;
  auto k = kvn_inequality_check(4, 1000, 1e-9, 88);
  if (k.trials != 1000) r.fail("trials " + std::to_string(k.trials));
  if (k.violations) r.fail(std::to_string(k.violations) + " violations");
  if (k.planted_error > 1e-9) r.fail("planted error " + fmt(k.planted_error));
  if (k.identity_error > 1e-9) r.fail("identity error " + fmt(k.identity_error));
  if (r.pass) r.detail = "max excess " + fmt(k.max_excess) + ", planted error " + fmt(k.planted_error);
  return r;
}

// ---------------------------------------------------------------- 9 and 11
const std::vector<std::string> kC9 = {"su-verify", "--n", "4", "--q", "2", "--order", "4", "--seed", "7",
                                      "--mode", "sampled", "--sample-budget", "10000", "--no-timestamp"};

Outcome c9_split_end_to_end(const CliRun& run, double secs) {
  Outcome r;
  if (run.code != 0) r.fail("exit " + std::to_string(run.code) + " " + run.err);
  json j;
  try {
    j = json::parse(run.out);
  } catch (const std::exception& e) {
    r.fail(std::string("report does not parse: ") + e.what());
    return r;
  }
  const json& res = j["result"];
  for (const char* k : {"tpp", "separating"}) {
    if (res[k]["verdict"] != "pass") r.fail(std::string(k) + " " + res[k]["verdict"].dump());
    if (res[k]["tuples_checked"] != 10000) r.fail(std::string(k) + " checked " + res[k]["tuples_checked"].dump());
  }
  const json& d = j["degrees"];
  if (d["deg_total"].get<long>() != d["deg_p0"].get<long>() + d["deg_r"].get<long>()) r.fail("degree identity");
  if (d["order"].get<int>() < d["t"].get<int>() + 2) r.fail("order below t+2");

  auto su = su_build(4);
  std::vector<double> per_q;
  for (int q : {2, 4, 8}) per_q.push_back(double(su_p0(su, q).p0->degree) / q);
  double lo = *std::min_element(per_q.begin(), per_q.end()), hi = *std::max_element(per_q.begin(), per_q.end());
  // quadratic growth would make deg/q at q=8 four times its q=2 value
  double end_ratio = per_q[2] / per_q[0];
  if (hi / lo > 2.0 + 1e-12 || end_ratio > 2.0) r.fail("deg p0 / q not bounded: " + fmt(per_q[0]) + ", " + fmt(per_q[1]) + ", " + fmt(per_q[2]));
  if (secs >= 300) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass)
    r.detail = "10^4 tuples each, t=" + d["t"].dump() + " order=" + d["order"].dump() + ", deg p0/q = " + fmt(per_q[0]) +
               ", " + fmt(per_q[1]) + ", " + fmt(per_q[2]) + ", " + fmt(secs) + " s";
  return r;
}

Outcome c11_determinism(const CliRun& a, const CliRun& b) {
  Outcome r;
  if (a.out.empty()) r.fail("empty report");
  if (a.out != b.out) r.fail("reports differ");
  if (r.pass) r.detail = std::to_string(a.out.size()) + " bytes identical";
  return r;
}

// ---------------------------------------------------------------- 10
Outcome c10_running_border() {
  Outcome r;
  auto run = cli({"sep-verify", "--n", "3", "--q", "4", "--sample-budget", "1000", "--seed", "10", "--no-timestamp"});
  if (run.code != 0) r.fail("exit " + std::to_string(run.code) + " " + run.err);
  json j = json::parse(run.out);
  const json& b = j["result"]["border_p0"];
  if (b["unequal_checked"] != 1000) r.fail("unequal pairs " + b["unequal_checked"].dump());
  if (b["failures"] != 0 || b["inconclusive"] != 0) r.fail("border indicator: " + b.dump());
  if (b["equal_checked"].get<long>() < 1) r.fail("no equal pairs");
  bool dev = false;
  for (const auto& d : j["deviations"]) dev = dev || d.get<std::string>().find("sign correction") != std::string::npos;
  if (!dev) r.fail("sign-correction deviation missing");
  std::vector<long> deg;
  for (int q : {2, 4, 8}) deg.push_back(running_border_p0(3, q, 1).p0->degree);
  for (int k = 0; k < 2; ++k) {
    double ratio = double(deg[k + 1]) / double(deg[k]);
    if (ratio < 3 || ratio > 5) r.fail("degree ratio " + fmt(ratio));
  }
  if (r.pass)
    r.detail = "1000 unequal + " + b["equal_checked"].dump() + " equal pairs, deg p0 = " + std::to_string(deg[0]) + ", " +
               std::to_string(deg[1]) + ", " + std::to_string(deg[2]);
  return r;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int k, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << k << " (" << name << "): " << o.detail << std::endl;
    if (!o.pass) ++failed;
  };
  auto guarded = [](const std::function<Outcome()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      Outcome o;
      o.fail(std::string("exception: ") + e.what());
      return o;
    }
  };
  report(1, "representation identity", guarded(c1_representation_identity));
  report(2, "irrep dimension bound", guarded(c2_dimension_bound));
  report(3, "omega calculator", guarded(c3_omega_calculator));
  report(4, "finite-group end-to-end", guarded(c4_finite_group));
  report(5, "running-example TPP", guarded(c5_running_tpp));
  report(6, "lpm expansion", guarded(c6_lpm_expansion));
  report(7, "SU(2,2) exact identities", guarded(c7_su_identities));
  report(8, "trace inequality Monte-Carlo", guarded(c8_kvn));

  auto t0 = std::chrono::steady_clock::now();
  CliRun first = cli(kC9);
  double secs = seconds_since(t0);
  report(9, "split end-to-end", guarded([&] { return c9_split_end_to_end(first, secs); }));
  report(10, "running-example border p0", guarded(c10_running_border));
  CliRun second = cli(kC9);
  report(11, "determinism", guarded([&] { return c11_determinism(first, second); }));

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
