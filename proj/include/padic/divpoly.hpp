#pragma once

#include <cstdint>
#include <unordered_map>

#include "padic/curve.hpp"

namespace padic {

/// Normalized division-polynomial data for a point Q modulo an odd R.
/// Queries memoize g values, so a context is not safe for concurrent use.
class DivPolyContext {
 public:
  DivPolyContext(const CurveQ& E, const RationalPoint& Q, const Integer& R);

  const Integer& R() const { return R_; }
  const Integer& alpha() const { return alpha_; }
  const Integer& beta() const { return beta_; }
  const Integer& d() const { return d_; }
  /// ã_k = d^k a_k for k in {1, 2, 3, 4, 6}.
  const Integer& a(int k) const;
  /// b̃_k for k in {2, 4, 6, 8}.
  const Integer& b(int k) const;
  /// B̃_k for k in {4, 6, 8}.
  const Integer& B(int k) const;
  const Integer& T() const { return T_; }

  /// g̃_j mod R.
  const Integer& g(std::uint64_t j);
  /// ψ̃_j = T̃^[j even] g̃_j mod R.
  Integer psi(std::uint64_t j);

  /// Number of times the doubling recursion has been evaluated.
  std::uint64_t evaluations() const { return evaluations_; }
  std::size_t memo_size() const { return memo_.size(); }
  /// Indices whose g̃ value has been computed, in increasing order.
  std::vector<std::uint64_t> computed_indices() const;

  const CurveQ& curve() const { return E_; }
  const RationalPoint& point() const { return Q_; }

 private:
  Integer reduce(const Integer& x) const { return mod(x, R_); }

  CurveQ E_;
  RationalPoint Q_;
  Integer R_;
  Integer alpha_, beta_, d_;
  Integer a1_, a2_, a3_, a4_, a6_;
  Integer b2_, b4_, b6_, b8_;
  Integer B4_, B6_, B8_, B6sq_;
  Integer T_;
  std::unordered_map<std::uint64_t, Integer> memo_;
  std::uint64_t evaluations_ = 0;
};

/// Throws EvenModulus for even R and InvalidArgument for R < 3 or Q = O.
DivPolyContext make_context(const CurveQ& E, const RationalPoint& Q, const Integer& R);

inline const Integer& g_value(DivPolyContext& ctx, std::uint64_t j) { return ctx.g(j); }

/// (α(mQ), ±β(mQ), ±d(mQ)) mod R; the signs of beta and d agree.
struct MultipleCoords {
  Integer alpha, beta, d;
  Integer psi_m_minus_1, psi_m, psi_m_plus_1;
  Integer theta_m, omega_m;
};

/// Requires m >= 2 and Q satisfying (A2). Throws TorsionCollapse when
/// ψ̃_m vanishes mod R because mQ is the identity.
MultipleCoords multiple_coords(DivPolyContext& ctx, std::uint64_t m);

/// "alpha=.. beta=±.. d=±..": the shared sign is fixed so that beta <= R/2.
std::string format_multiple(const MultipleCoords& mc, const Integer& R);

}  // namespace padic
