#pragma once

#include <cmath>
#include <stdexcept>

namespace qcournot {

// Comparisons of payoff values near a quadratic optimum only resolve the
// argmax to about sqrt(epsilon) of the arithmetic, so oracles that need the
// argmax to 1e-10 run in quad precision where the compiler provides it.
#if defined(__SIZEOF_FLOAT128__)
using WideReal = __float128;
#else
using WideReal = long double;
#endif

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Stops once the bracket is narrower than `tol` and returns its midpoint.
template <typename Real, typename F>
Real golden_section_maximize(F&& f, Real lo, Real hi, Real tol, int max_iter = 1000) {
  if (!(hi >= lo)) throw std::invalid_argument("golden section: empty bracket");
  // 1/phi and 1/phi^2
  const Real inv_phi = Real(0.61803398874989484820458683436563811772L);
  const Real inv_phi2 = Real(0.38196601125010515179541316563436188228L);

  Real a = lo;
  Real b = hi;
  Real c = a + inv_phi2 * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = f(c);
  Real fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + inv_phi2 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / Real(2);
}

}  // namespace qcournot
