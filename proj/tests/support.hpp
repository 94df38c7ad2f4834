#pragma once

#include <cmath>
#include <functional>
#include <optional>

// Test-side oracles, independent of the library's closed forms.

namespace testsupport {

// Bisection root finder; expects f(lo) and f(hi) of opposite sign.
inline std::optional<double> bisect(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double tol = 1e-12, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of a*g^2 + b*g + c on the given side of the parabola's vertex.
// `below_vertex` selects the smaller root. Purely bracketing; never uses
// the quadratic formula.
inline std::optional<double> bisect_quadratic(double a, double b, double c,
                                              bool below_vertex,
                                              double span = 100.0) {
  auto f = [=](double g) { return (a * g + b) * g + c; };
  const double vertex = -b / (2.0 * a);
  double lo = below_vertex ? vertex - span : vertex;
  double hi = below_vertex ? vertex : vertex + span;
  // widen until the outer end changes sign
  for (int i = 0; i < 60; ++i) {
    if ((f(lo) > 0.0) != (f(hi) > 0.0)) break;
    if (below_vertex)
      lo -= span;
    else
      hi += span;
  }
  return bisect(f, lo, hi, 1e-12);
}

}  // namespace testsupport
