#include "liemm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liemm {

double max_abs_diff(const Mat<FloatComplex>& a, const Mat<FloatComplex>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

bool approx_equal(const Mat<FloatComplex>& a, const Mat<FloatComplex>& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

namespace {
template <class T>
std::string mat_str_impl(const Mat<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}
}  // namespace

std::string mat_str(const Mat<Rational>& m) { return mat_str_impl(m); }
std::string mat_str(const Mat<GaussRational>& m) { return mat_str_impl(m); }

}  // namespace liemm
