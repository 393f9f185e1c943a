#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "liemm/cyclotomic.hpp"
#include "liemm/gauss.hpp"
#include "liemm/rational.hpp"
#include "liemm/series.hpp"

namespace liemm {

using FloatComplex = std::complex<double>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static constexpr bool is_field = true;
  static constexpr bool is_exact = true;
};
template <>
struct ScalarTraits<GaussRational> {
  static GaussRational zero() { return {}; }
  static GaussRational one() { return GaussRational(1); }
  static bool is_zero(const GaussRational& x) { return x.is_zero(); }
  static constexpr bool is_field = true;
  static constexpr bool is_exact = true;
};
template <>
struct ScalarTraits<Cyclotomic> {
  static Cyclotomic zero() { return {}; }
  static Cyclotomic one() { return Cyclotomic(1); }
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  static constexpr bool is_field = true;
  static constexpr bool is_exact = true;
};
template <>
struct ScalarTraits<EpsLaurent> {
  static EpsLaurent zero() { return {}; }
  static EpsLaurent one() { return EpsLaurent(1); }
  static bool is_zero(const EpsLaurent& x) { return x.is_exact_zero(); }
  static constexpr bool is_field = false;
  static constexpr bool is_exact = true;
};
template <>
struct ScalarTraits<FloatComplex> {
  static FloatComplex zero() { return {}; }
  static FloatComplex one() { return {1.0, 0.0}; }
  static bool is_zero(const FloatComplex& x) { return x == FloatComplex{}; }
  static constexpr bool is_field = false;
  static constexpr bool is_exact = false;
};
template <>
struct ScalarTraits<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static constexpr bool is_field = false;
  static constexpr bool is_exact = false;
};

inline double conj(double x) { return x; }

// Dense row-major matrix over a scalar type.
template <class T>
class Mat {
 public:
  using value_type = T;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, ScalarTraits<T>::zero()) {}
  Mat(std::size_t r, std::size_t c, std::vector<T> data) : r_(r), c_(c), d_(std::move(data)) {
    if (d_.size() != r * c) throw std::invalid_argument("matrix data size mismatch");
  }
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    d_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) d_.push_back(x);
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }
  static Mat diag(const std::vector<T>& v) {
    Mat m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
  const std::vector<T>& data() const { return d_; }
  std::vector<T>& data() { return d_; }

  Mat& operator+=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= o.d_[k];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.d_) x = -x;
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (ScalarTraits<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) {
          const T& bkj = b(k, j);
          if (ScalarTraits<T>::is_zero(bkj)) continue;
          r(i, j) += aik * bkj;
        }
      }
    return r;
  }
  Mat scaled(const T& s) const {
    Mat r = *this;
    for (auto& x : r.d_) x = x * s;
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }

  template <class F>
  auto map(F f) const -> Mat<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<U> out;
    out.reserve(d_.size());
    for (const auto& x : d_) out.push_back(f(x));
    return Mat<U>(r_, c_, std::move(out));
  }

 private:
  void check_same(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

template <class T>
Mat<T> conj_entries(const Mat<T>& m) {
  return m.map([](const T& x) { using liemm::conj; using std::conj; return T(conj(x)); });
}

template <class T>
Mat<T> conj_transpose(const Mat<T>& m) {
  return transpose(conj_entries(m));
}

template <class T>
T trace(const Mat<T>& m) {
  if (!m.square()) throw std::invalid_argument("trace of non-square matrix");
  T s = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

template <class T>
Mat<T> submatrix(const Mat<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Mat<T> r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

template <class T>
Mat<T> drop_row_col(const Mat<T>& m, std::size_t i0, std::size_t j0) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i != i0) rows.push_back(i);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j != j0) cols.push_back(j);
  return submatrix(m, rows, cols);
}

// Fraction-free Bareiss elimination; T must be a field.
template <class T>
T det_bareiss(Mat<T> a) {
  static_assert(ScalarTraits<T>::is_field, "Bareiss needs exact division");
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return ScalarTraits<T>::one();
  bool neg = false;
  T prev = ScalarTraits<T>::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && ScalarTraits<T>::is_zero(a(p, k))) ++p;
    if (p == n) return ScalarTraits<T>::zero();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = ScalarTraits<T>::zero();
    }
    prev = a(k, k);
  }
  T d = a(n - 1, n - 1);
  return neg ? T(-d) : d;
}

// Division-free cofactor expansion over column subsets (O(n 2^n) products).
template <class T>
T det_expand(const Mat<T>& a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return ScalarTraits<T>::one();
  if (n > 20) throw std::invalid_argument("cofactor expansion limited to n <= 20");
  std::vector<T> f(std::size_t(1) << n, ScalarTraits<T>::zero());
  f[0] = ScalarTraits<T>::one();
  for (std::size_t mask = 1; mask < f.size(); ++mask) {
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    T acc = ScalarTraits<T>::zero();
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const T& sub = f[mask & ~(std::size_t(1) << j)];
      if (ScalarTraits<T>::is_zero(sub) || ScalarTraits<T>::is_zero(a(row, j))) continue;
      // sign from the number of chosen columns to the right of j
      int above = __builtin_popcountll(mask >> (j + 1));
      T term = a(row, j) * sub;
      if (above & 1)
        acc -= term;
      else
        acc += term;
    }
    f[mask] = std::move(acc);
  }
  return f.back();
}

inline FloatComplex det_float(Mat<FloatComplex> a) {
  std::size_t n = a.rows();
  FloatComplex d{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) == 0.0) return {};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      FloatComplex f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

template <class T>
T det(const Mat<T>& a) {
  if constexpr (ScalarTraits<T>::is_field) {
    return det_bareiss(a);
  } else if constexpr (std::is_same_v<T, FloatComplex>) {
    return det_float(a);
  } else {
    return det_expand(a);
  }
}

template <class T>
T mat_minor(const Mat<T>& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs equal row/column counts");
  return det(submatrix(m, rows, cols));
}

// Leading principal minor of order j (det of the upper-left j x j block).
template <class T>
T lpm(const Mat<T>& m, std::size_t j) {
  if (j > m.rows() || j > m.cols()) throw std::invalid_argument("lpm order exceeds matrix size");
  std::vector<std::size_t> idx(j);
  for (std::size_t k = 0; k < j; ++k) idx[k] = k;
  return mat_minor(m, idx, idx);
}

template <class T>
std::size_t hash_mat(const Mat<T>& m) {
  std::size_t h = m.rows() * 131 + m.cols();
  for (const auto& x : m.data()) h = h * 1000003u ^ std::hash<T>{}(x);
  return h;
}

template <class T>
struct MatHash {
  std::size_t operator()(const Mat<T>& m) const { return hash_mat(m); }
};

// Lift an exact matrix into constant (exact) series.
template <class T>
Mat<EpsLaurent> to_series(const Mat<T>& m) {
  return m.map([](const T& x) { return EpsLaurent(GaussRational(x)); });
}

template <class T>
Mat<FloatComplex> to_float(const Mat<T>& m);

template <>
inline Mat<FloatComplex> to_float(const Mat<Rational>& m) {
  return m.map([](const Rational& x) { return FloatComplex(x.to_double(), 0.0); });
}
template <>
inline Mat<FloatComplex> to_float(const Mat<GaussRational>& m) {
  return m.map([](const GaussRational& x) { return FloatComplex(x.re.to_double(), x.im.to_double()); });
}

double max_abs_diff(const Mat<FloatComplex>& a, const Mat<FloatComplex>& b);
bool approx_equal(const Mat<FloatComplex>& a, const Mat<FloatComplex>& b, double tol = 1e-9);

std::string mat_str(const Mat<Rational>& m);
std::string mat_str(const Mat<GaussRational>& m);

}  // namespace liemm
