#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "clique/errors.hpp"

namespace clique {

inline constexpr double default_guard_log2 = 24.0;

// log2 of the largest exhaustive search allowed. CLIQUE_LAB_GUARD (an
// exponent, e.g. "28") overrides the default; meant for tests only.
inline double guard_log2() {
  if (const char* env = std::getenv("CLIQUE_LAB_GUARD")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return default_guard_log2;
}

inline void check_guard(const std::string& what, double log2_space) {
  const double limit = guard_log2();
  if (log2_space > limit + 1e-9) throw GuardExceeded(what, log2_space, limit);
}

// log2 of sum_{s <= k} C(n, s), computed in floating point for guard checks.
inline double log2_subsets_up_to(std::size_t n, std::size_t k) {
  double total = 0, term = 1;
  for (std::size_t s = 0; s <= k && s <= n; ++s) {
    total += term;
    term = term * static_cast<double>(n - s) / static_cast<double>(s + 1);
  }
  return std::log2(total);
}

}  // namespace clique
