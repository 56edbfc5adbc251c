#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic/zmod.hpp"

namespace padic {

using Rational = mpq_class;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
/// The model is used as given; it need not be minimal.
struct CurveQ {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8, c4, c6, disc;

  /// Throws InvalidArgument if the discriminant vanishes.
  static CurveQ from_ainvariants(const Integer& a1, const Integer& a2, const Integer& a3,
                                 const Integer& a4, const Integer& a6);
  static CurveQ from_ainvariants(long a1, long a2, long a3, long a4, long a6) {
    return from_ainvariants(Integer(a1), Integer(a2), Integer(a3), Integer(a4), Integer(a6));
  }

  std::string to_string() const;
};

/// Rational point stored as (alpha/d^2, beta/d^3) in lowest terms, d >= 1.
class RationalPoint {
 public:
  static RationalPoint infinity();
  /// Requires the denominators to have the shape d^2, d^3.
  static RationalPoint from_affine(const Rational& x, const Rational& y);
  static RationalPoint from_integers(const Integer& alpha, const Integer& beta, const Integer& d);

  bool is_infinity() const { return inf_; }
  const Integer& alpha() const { return alpha_; }
  const Integer& beta() const { return beta_; }
  const Integer& d() const { return d_; }
  Rational x() const;
  Rational y() const;

  friend bool operator==(const RationalPoint& a, const RationalPoint& b);
  std::string to_string() const;

 private:
  bool inf_ = true;
  Integer alpha_, beta_, d_{1};
};

bool on_curve(const CurveQ& E, const RationalPoint& P);
RationalPoint point_neg(const CurveQ& E, const RationalPoint& P);
RationalPoint point_add(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q);
/// nP by double-and-add over exact rationals; n >= 0.
RationalPoint scalar_mul(const CurveQ& E, const Integer& n, const RationalPoint& P);
inline RationalPoint scalar_mul(const CurveQ& E, long n, const RationalPoint& P) {
  return scalar_mul(E, Integer(n), P);
}

/// True when some multiple kP with 1 <= k <= 12 is the identity; by
/// Mazur's bound this decides torsion for points over Q.
bool is_torsion(const CurveQ& E, const RationalPoint& P);

struct PointCount {
  Integer n1;  ///< #E(F_p), including the point at infinity
  Integer ap;  ///< p + 1 - n1
};

/// Counts points by a quadratic-character scan over x in F_p.
PointCount count_points(const CurveQ& E, std::uint64_t p);

bool is_good_ordinary(const CurveQ& E, std::uint64_t p);

/// Discriminant-preserving model y^2 = x^3 + A x + B with A = -c4/48,
/// B = -c6/864. The invariant differential is unchanged.
struct ShortModel {
  Rational A, B;
};
ShortModel short_weierstrass_model(const CurveQ& E);

/// Prime factors (without multiplicity) of |n|, n != 0. Trial division to
/// 10^6, then Pollard rho for a cofactor below 2^64.
std::vector<Integer> prime_factors(const Integer& n);

struct ReductionChecks {
  bool a1_holds = false;  ///< P reduces to the identity of E(F_p)
  bool a2_holds = false;  ///< P is nonsingular mod every prime dividing disc
};

/// Evaluates conditions (A1)/(A2) on the given model. Primes dividing the
/// model discriminant are treated as bad even when the model is not minimal.
ReductionChecks check_A1_A2(const CurveQ& E, const RationalPoint& P, const Integer& p);

/// True when P reduces to a singular point of E mod ell.
bool reduces_to_singular(const CurveQ& E, const RationalPoint& P, const Integer& ell);

}  // namespace padic
