#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "spdc/error.hpp"

// Derivative-free 1-D root isolation: a uniform bracket scan followed by
// bisection. Fixed iteration policy, so results are bit-reproducible.
namespace spdc::roots {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Every grid cell [x_k, x_k+1] of the uniform scan over [lo, hi] where f
// changes sign. An exact zero at a grid node yields a degenerate bracket.
template <class F>
std::vector<Bracket> scan_brackets(F&& f, double lo, double hi, double step) {
  std::vector<Bracket> out;
  const auto n = static_cast<long>(std::ceil((hi - lo) / step - 1e-9));
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.push_back({lo, lo});
  for (long k = 1; k <= n; ++k) {
    const double x = k == n ? hi : lo + static_cast<double>(k) * step;
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back({x, x});
    } else if (f_prev != 0.0 && std::signbit(fx) != std::signbit(f_prev)) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

// Halves the bracket until its width is below x_tol (or the midpoint no
// longer separates the endpoints) and returns the midpoint.
template <class F>
double bisect(F&& f, Bracket b, double x_tol) {
  if (b.lo == b.hi) return b.lo;
  double lo = b.lo;
  double hi = b.hi;
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::string describe(const std::vector<Bracket>& brackets, double scale = 1.0) {
  std::string s;
  for (const auto& b : brackets) {
    if (!s.empty()) s += ", ";
    s += fmt::format("[{:.4f}, {:.4f}]", b.lo * scale, b.hi * scale);
  }
  return s;
}

// Unique root of f in [lo, hi]; throws SolverError when the scan finds no
// sign change or more than one.
template <class F>
double unique_root(F&& f, double lo, double hi, double step, double x_tol, const std::string& what,
                   double report_scale = 1.0) {
  const auto brackets = scan_brackets(f, lo, hi, step);
  if (brackets.empty()) {
    throw SolverError(fmt::format("{}: no sign change in [{:.4f}, {:.4f}]", what, lo * report_scale,
                                  hi * report_scale));
  }
  if (brackets.size() > 1) {
    throw SolverError(fmt::format("{}: {} roots bracketed, narrow the window: {}", what, brackets.size(),
                                  describe(brackets, report_scale)));
  }
  return bisect(f, brackets.front(), x_tol);
}

}  // namespace spdc::roots
