#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liemm {

using Partition = std::vector<int>;  // weakly decreasing, may carry trailing zeros

std::string partition_str(const Partition& p);  // "(3,0,0)"

// All partitions of s into at most max_parts positive parts, lexicographically
// decreasing.  Parts are not zero-padded.
std::vector<Partition> partitions_of(int s, int max_parts);

// Weyl dimension of the GL_n irrep with highest weight lambda (zero padded to n).
mpz_class weyl_dim(const Partition& lambda, int n);

// sum over i <= s and lambda |- i with <= n parts of dim(V_lambda)^2
mpz_class sum_dim_squares(int s, int n);

struct MaxDim {
  Partition lambda;  // padded to length n
  mpz_class dim;
};
// Largest irrep dimension over partitions of s; ties go to the
// lexicographically greatest partition.
MaxDim max_dim(int s, int n);

// (1 + s (ln n + gamma) / C(n,2))^C(n,2); informational only.
double tight_bound(int s, int n);

struct NoBound : std::domain_error {
  explicit NoBound(const std::string& w) : std::domain_error("no nontrivial bound: " + w) {}
};

// Sizes and D, dmax either as plain values or as natural logs.
struct OmegaInputs {
  double sizeX = 0, sizeY = 0, sizeZ = 0;
  double D = 0, dmax = 0;
  bool logs = false;
};

double omega_bound(const OmegaInputs& in);

// Corollary form with everything in base-s logs; log_s_xyz = log_s(|X||Y||Z|).
double corollary_bound(double log_s_xyz, int s, int n);

struct RepdimRow {
  int s, n;
  Partition max_partition;
  mpz_class max_dim;
  mpz_class bound_s_pow;  // s^C(n,2)
  mpz_class sum_sq;
  bool binom_check;
  double tight;
};
std::vector<RepdimRow> repdim_table(int n, int smax);
std::string repdim_csv(const std::vector<RepdimRow>& rows, bool with_tight = false);

}  // namespace liemm
