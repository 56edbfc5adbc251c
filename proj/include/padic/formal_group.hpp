#pragma once

#include <vector>

#include "padic/curve.hpp"
#include "padic/series.hpp"

namespace padic {

/// Expansions at the origin in the parameter t = -x/y, all stored with
/// offset 0 and N+1 terms over Z/p^(N-3) Z.
struct FormalGroupData {
  ModulusPtr modulus;
  int N = 0;
  PadicSeries w_unit;  ///< t^-3 w(t)
  PadicSeries x_unit;  ///< t^2 x(t)
  PadicSeries y_unit;  ///< t^3 y(t)
  PadicSeries omega;   ///< omega(t), the invariant differential over dt

  PadicSeries w() const { return w_unit.shifted(3); }
  PadicSeries x() const { return x_unit.shifted(-2); }
  PadicSeries y() const { return y_unit.shifted(-3); }
};

/// Newton iterates for w(t) over Z/p^(N-3) Z, starting at t^3 + O(t^4) and
/// doubling the number of correct terms until O(t^(N+4)). Each iterate is
/// stored as w itself (offset 0, length equal to its order).
std::vector<PadicSeries> compute_w_iterates(const CurveQ& E, const Integer& p, int N);

/// t^-3 w(t) to O(t^(N+1)) over Z/p^(N-3) Z.
PadicSeries compute_w(const CurveQ& E, const Integer& p, int N);

/// Derives x = t/w, y = -1/w and omega = x'/(2y + a1 x + a3) from t^-3 w.
FormalGroupData compute_xy_omega(const CurveQ& E, const PadicSeries& w_unit, int N);

FormalGroupData compute_formal_group(const CurveQ& E, const Integer& p, int N);

}  // namespace padic
