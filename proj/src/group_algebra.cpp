#include "liemm/group_algebra.hpp"

namespace liemm {

std::vector<Representation<Cyclotomic>> cyclic_characters(int m) {
  if (m < 1) throw std::invalid_argument("cyclic_characters: m must be positive");
  std::vector<Representation<Cyclotomic>> out;
  for (int j = 0; j < m; ++j) {
    Representation<Cyclotomic> r;
    for (int k = 0; k < m; ++k) r.of.push_back(Mat<Cyclotomic>{{Cyclotomic::zeta(m, static_cast<long>(j) * k % m)}});
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace liemm
