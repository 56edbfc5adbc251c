#pragma once

#include <vector>

#include "padic/formal_group.hpp"

namespace padic {

/// c = (a1^2 + 4 a2 - E2) / 12 at the precision of e2.
ZModPN compute_c(const CurveQ& E, const ZModPN& e2);

/// Approximation of h(t) = -1/t - omega (int (x + c) omega dt + a1/2).
struct HSeries {
  int N = 0;
  /// N terms over Z/p^(N-3) Z, t^0 .. t^(N-1).
  PadicSeries series;
  /// a1/2 modulo p^(N-2); replaces the constant term of `series`.
  Integer constant;
  /// precision[j]: the t^j coefficient is correct modulo p^precision[j].
  std::vector<int> precision;

  /// (x + c) omega, offset -2, known to O(t^(N-1)).
  PadicSeries xc_omega;
  /// int (x + c) omega dt + a1/2, offset -1, known to O(t^N).
  PadicSeries integral;
  /// loss[i] = digits lost at stored index i of `integral`.
  std::vector<int> integral_loss;

  /// The series over Z/p^(N-2) Z with the lifted constant term.
  PadicSeries lifted() const;
};

HSeries compute_h_hat(const CurveQ& E, const FormalGroupData& fg, const ZModPN& c);

struct BrentResult {
  PadicSeries F;
  /// F_0, F_1, ...: iterate i is known to O(t^min(2^i, n)).
  std::vector<PadicSeries> iterates;
};

/// Solves F'/F = f with F(0) = 1 modulo (t^n, J) over Z/p^k Z without
/// dividing by anything but exact powers of p. f needs n-1 terms.
BrentResult brent_solve(const PadicSeries& f, int n);

/// sigma_p(t) = t + c2 t^2 + ... modulo I_N.
struct SigmaSeries {
  IdealSeries series;

  int N() const { return series.N(); }
  const Integer& p() const { return series.p(); }
  /// Coefficient of t^k (1 <= k < N), known mod p^(N-k).
  const Integer& coeff(int k) const { return series.coeff(k); }
  std::string to_string() const { return series.to_string(); }
};

/// Every stage of the sigma computation, retained for inspection.
struct SigmaTrace {
  std::vector<PadicSeries> w_iterates;
  FormalGroupData formal_group;
  ZModPN c;
  HSeries h;
  BrentResult theta;
  SigmaSeries sigma;
};

/// sigma_p(t) mod I_N given E2 to at least p^(N-3). For N <= 3 the result
/// needs no E2 and e2 may be omitted.
SigmaSeries compute_sigma(const CurveQ& E, const Integer& p, int N, const ZModPN* e2);
inline SigmaSeries compute_sigma(const CurveQ& E, const Integer& p, int N, const ZModPN& e2) {
  return compute_sigma(E, p, N, &e2);
}

/// Same as compute_sigma for N >= 4, keeping the intermediate series.
SigmaTrace compute_sigma_trace(const CurveQ& E, const Integer& p, int N, const ZModPN& e2);

/// a1/2 modulo p^e.
Integer half_a1(const CurveQ& E, const Integer& p, int e);

}  // namespace padic
