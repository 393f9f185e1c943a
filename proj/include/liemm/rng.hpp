#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace liemm {

using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection; unlike std::uniform_int_distribution
// the sequence is identical across standard libraries.
inline std::uint64_t draw_below(Rng& g, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do v = g();
  while (v >= limit);
  return v % n;
}

inline long draw_range(Rng& g, long lo, long hi) {
  return lo + static_cast<long>(draw_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Uniform double in [0, 1) from the top 53 bits.
inline double draw_unit(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// Standard normal by Box-Muller, again for portability.
inline double draw_normal(Rng& g) {
  double u = 1.0 - draw_unit(g), v = draw_unit(g);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

}  // namespace liemm
