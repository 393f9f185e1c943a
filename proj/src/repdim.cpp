#include "liemm/repdim.hpp"

#include <cmath>
#include <sstream>

#include "liemm/rational.hpp"

namespace liemm {

std::string partition_str(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

namespace {

void gen_partitions(int rest, int maxpart, int slots, Partition& cur, std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(rest, maxpart); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(rest - p, p, slots - 1, cur, out);
    cur.pop_back();
  }
}

Partition padded(Partition p, int n) {
  if (static_cast<int>(p.size()) > n) throw std::invalid_argument("partition longer than n");
  p.resize(static_cast<std::size_t>(n), 0);
  return p;
}

}  // namespace

std::vector<Partition> partitions_of(int s, int max_parts) {
  if (s < 0 || max_parts < 1) throw std::invalid_argument("partitions_of: need s >= 0, max_parts >= 1");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(s, s, max_parts, cur, out);
  return out;
}

mpz_class weyl_dim(const Partition& lambda, int n) {
  Partition l = padded(lambda, n);
  for (int i = 0; i + 1 < n; ++i)
    if (l[i] < l[i + 1] || l[i + 1] < 0) throw std::invalid_argument("not a partition: " + partition_str(lambda));
  mpq_class acc = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) acc *= mpq_class(l[i] - l[j] + j - i, j - i);
  acc.canonicalize();
  if (acc.get_den() != 1) throw std::logic_error("Weyl product not integral");
  return acc.get_num();
}

mpz_class sum_dim_squares(int s, int n) {
  if (s < 0 || n < 1) throw std::invalid_argument("sum_dim_squares: need s >= 0, n >= 1");
  mpz_class total = 0;
  for (int i = 0; i <= s; ++i)
    for (const auto& p : partitions_of(i, n)) {
      mpz_class d = weyl_dim(p, n);
      total += d * d;
    }
  return total;
}

MaxDim max_dim(int s, int n) {
  MaxDim best{padded({}, n), 0};
  // partitions_of yields lexicographically decreasing order, so a strict
  // comparison keeps the greatest partition among ties
  for (const auto& p : partitions_of(s, n)) {
    mpz_class d = weyl_dim(p, n);
    if (d > best.dim) best = {padded(p, n), d};
  }
  return best;
}

double tight_bound(int s, int n) {
  const double gamma = 0.57721566490153286;
  double c2 = n * (n - 1) / 2.0;
  if (c2 == 0) return 1.0;
  return std::pow(1.0 + s * (std::log(static_cast<double>(n)) + gamma) / c2, c2);
}

double omega_bound(const OmegaInputs& in) {
  auto lg = [&](double v, const char* what) {
    if (in.logs) return v;
    if (!(v > 0)) throw std::invalid_argument(std::string("omega_bound: nonpositive ") + what);
    return std::log(v);
  };
  double lx = lg(in.sizeX, "sizeX"), ly = lg(in.sizeY, "sizeY"), lz = lg(in.sizeZ, "sizeZ");
  double lD = lg(in.D, "D"), ldm = lg(in.dmax, "dmax");
  if (2 * ldm > lD + 1e-12 * std::max(1.0, std::abs(lD))) throw std::invalid_argument("omega_bound: dmax^2 exceeds D");
  double lV = (lx + ly + lz) / 3.0;
  double den = lV - ldm;
  if (!(den > 1e-12 * std::max(1.0, std::abs(lV)))) throw NoBound("need V > dmax");
  return (lD - 2 * ldm) / den;
}

double corollary_bound(double log_s_xyz, int s, int n) {
  if (s < 2 || n < 1) throw std::invalid_argument("corollary_bound: need s >= 2, n >= 1");
  double c2 = n * (n - 1) / 2.0;
  double ls = std::log(static_cast<double>(s));
  double logs_binom = log_mpz(binomial(static_cast<unsigned long>(s + n * n), static_cast<unsigned long>(n * n))) / ls;
  double den = log_s_xyz / 3.0 - c2;
  if (!(den > 1e-12 * std::max(1.0, c2))) throw NoBound("denominator is not positive");
  return (logs_binom - 2 * c2) / den;
}

std::vector<RepdimRow> repdim_table(int n, int smax) {
  if (n < 1 || smax < 0) throw std::invalid_argument("repdim_table: need n >= 1, s >= 0");
  std::vector<RepdimRow> rows;
  int c2 = n * (n - 1) / 2;
  for (int s = 0; s <= smax; ++s) {
    MaxDim m = max_dim(s, n);
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(c2));
    mpz_class sq = sum_dim_squares(s, n);
    bool ok = sq == binomial(static_cast<unsigned long>(s + n * n), static_cast<unsigned long>(n * n));
    rows.push_back({s, n, m.lambda, m.dim, bound, sq, ok, tight_bound(s, n)});
  }
  return rows;
}

std::string repdim_csv(const std::vector<RepdimRow>& rows, bool with_tight) {
  std::ostringstream os;
  os << "s,n,max_partition,max_dim,bound_s_pow,sum_sq,binom_check";
  if (with_tight) os << ",tight_bound";
  os << "\n";
  for (const auto& r : rows) {
    os << r.s << ',' << r.n << ",\"" << partition_str(r.max_partition) << "\"," << r.max_dim.get_str() << ','
       << r.bound_s_pow.get_str() << ',' << r.sum_sq.get_str() << ',' << (r.binom_check ? "true" : "false");
    if (with_tight) {
      std::ostringstream t;
      t.precision(10);
      t << r.tight;
      os << ',' << t.str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace liemm
