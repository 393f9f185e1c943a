#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "liemm/linsolve.hpp"
#include "liemm/rng.hpp"
#include "liemm/series_matrix.hpp"

namespace liemm {

// Finite group given by its multiplication table.
class TableGroup {
 public:
  using Elem = int;
  static constexpr bool hashable = true;

  // Validates closure, finds the identity and inverses, and spot-checks
  // associativity on random triples (exhaustive for small tables).
  explicit TableGroup(std::vector<std::vector<int>> table, std::uint64_t seed = 1);
  static TableGroup cyclic(int m);
  // direct product Z_m1 x Z_m2 x ..., element index in mixed radix
  static TableGroup abelian(const std::vector<int>& orders);

  int size() const { return static_cast<int>(t_.size()); }
  int mul(int a, int b) const { return t_[idx(a)][idx(b)]; }
  int inv(int a) const { return inv_[idx(a)]; }
  int identity() const { return e_; }
  bool is_identity(int a) const { return a == e_; }
  bool equal(int a, int b) const { return a == b; }
  std::size_t hash(int a) const { return static_cast<std::size_t>(a); }
  const std::vector<std::vector<int>>& table() const { return t_; }

 private:
  std::size_t idx(int a) const {
    if (a < 0 || a >= size()) throw std::out_of_range("group element out of range: " + std::to_string(a));
    return static_cast<std::size_t>(a);
  }
  std::vector<std::vector<int>> t_;
  std::vector<int> inv_;
  int e_ = 0;
};

// Invertible exact matrices under multiplication.
template <class T>
class MatrixGroup {
 public:
  using Elem = Mat<T>;
  static constexpr bool hashable = true;

  explicit MatrixGroup(std::size_t n) : n_(n) {}
  std::size_t dim() const { return n_; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return mat_inverse(a); }
  Elem identity() const { return Elem::identity(n_); }
  bool is_identity(const Elem& a) const { return a == identity(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::size_t hash(const Elem& a) const { return hash_mat(a); }

 private:
  std::size_t n_;
};

// Floating-point matrices compared with an absolute entrywise tolerance.
// Only for explicitly tolerance-tagged checks; inverses are computed by LU.
class FloatMatGroup {
 public:
  using Elem = Mat<FloatComplex>;
  static constexpr bool hashable = false;

  FloatMatGroup(std::size_t n, double tol) : n_(n), tol_(tol) {}
  std::size_t dim() const { return n_; }
  double tol() const { return tol_; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem identity() const { return Elem::identity(n_); }
  bool is_identity(const Elem& a) const { return approx_equal(a, identity(), tol_); }
  bool equal(const Elem& a, const Elem& b) const { return approx_equal(a, b, tol_); }
  std::size_t hash(const Elem&) const { return 0; }

 private:
  std::size_t n_;
  double tol_;
};

Mat<FloatComplex> float_inverse(const Mat<FloatComplex>& a);

struct DuplicateFamily : std::invalid_argument {
  explicit DuplicateFamily(const std::string& w) : std::invalid_argument("duplicate family: " + w) {}
};

// Families of matrices over truncated series with precomputed inverses.
struct FamilyList {
  std::vector<SeriesMat> fam;
  std::vector<SeriesMat> inv;

  FamilyList() = default;
  // Rejects two members that agree on their whole common window.
  FamilyList(std::vector<SeriesMat> f, const std::string& name);
  std::size_t size() const { return fam.size(); }
};

// Lowest exponent where two families differ, if any within the windows.
std::optional<int> family_difference(const SeriesMat& a, const SeriesMat& b);

}  // namespace liemm
