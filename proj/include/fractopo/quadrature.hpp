#pragma once

// Adaptive Simpson integration with absolute tolerance and Richardson
// correction.  The recursion splits until the classic |S2-S1| <= 15*tol
// criterion holds or the depth cap is reached; reaching the cap is recorded
// rather than thrown, so callers can surface non-convergence.

#include <cmath>
#include <cstdint>

namespace fractopo {

struct QuadratureStats {
  std::int64_t evaluations = 0;
  bool converged = true;
  int max_depth_seen = 0;
};

inline constexpr int kSimpsonMaxDepth = 30;

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth,
                       QuadratureStats* stats) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  if (stats != nullptr) {
    stats->evaluations += 2;
    if (depth > stats->max_depth_seen) stats->max_depth_seen = depth;
  }
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= kSimpsonMaxDepth) {
    if (std::abs(delta) > 15.0 * tol && stats != nullptr) {
      stats->converged = false;
    }
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                         stats) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                         stats);
}

}  // namespace detail

// Integral of f over [a, b] (a may exceed b; the usual sign convention
// applies) to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        QuadratureStats* stats = nullptr) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  if (stats != nullptr) stats->evaluations += 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return sign * detail::simpson_recurse(f, a, b, fa, fm, fb, whole,
                                        std::abs(tol), 0, stats);
}

}  // namespace fractopo
