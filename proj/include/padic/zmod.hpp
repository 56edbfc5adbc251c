#pragma once

#include <climits>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic/errors.hpp"

namespace padic {

using Integer = mpz_class;

/// Valuation returned for zero.
inline constexpr int kInfiniteValuation = INT_MAX;

/// Shared description of the ring Z/p^N Z. One instance is created per
/// computation stage and shared by every residue of that stage.
struct Modulus {
  Integer p;
  int N = 0;
  Integer pN;
};

using ModulusPtr = std::shared_ptr<const Modulus>;

/// Builds the descriptor for Z/p^N Z. Requires p prime, p >= 5, N >= 1.
ModulusPtr make_modulus(const Integer& p, int N);

/// Builds the descriptor without the p >= 5 primality check. Used for
/// auxiliary odd moduli in tests and the division-polynomial layer.
ModulusPtr make_modulus_unchecked(const Integer& p, int N);

Integer ipow(const Integer& base, unsigned long exp);

/// Least non-negative residue of a modulo m.
Integer mod(const Integer& a, const Integer& m);

/// Inverse of a modulo m; throws NotAUnit when gcd(a, m) != 1.
Integer inv_mod(const Integer& a, const Integer& m);

/// A residue modulo p^N.
class ZModPN {
 public:
  ZModPN(ModulusPtr m, const Integer& v);
  ZModPN(ModulusPtr m, long v) : ZModPN(std::move(m), Integer(v)) {}

  const Integer& value() const { return value_; }
  const Modulus& modulus() const { return *mod_; }
  const ModulusPtr& modulus_ptr() const { return mod_; }
  const Integer& p() const { return mod_->p; }
  int N() const { return mod_->N; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;

  ZModPN& operator+=(const ZModPN& o);
  ZModPN& operator-=(const ZModPN& o);
  ZModPN& operator*=(const ZModPN& o);
  friend ZModPN operator+(ZModPN a, const ZModPN& b) { return a += b; }
  friend ZModPN operator-(ZModPN a, const ZModPN& b) { return a -= b; }
  friend ZModPN operator*(ZModPN a, const ZModPN& b) { return a *= b; }
  ZModPN operator-() const;

  friend bool operator==(const ZModPN& a, const ZModPN& b);

  ZModPN pow(const Integer& e) const;

  /// Reduces to a coarser modulus p^M, M <= N.
  ZModPN truncate(int M) const;

 private:
  void check_same(const ZModPN& o) const;

  ModulusPtr mod_;
  Integer value_;
};

/// Inverse in Z/p^N Z. Throws NotAUnit if p divides a.
ZModPN inv_mod_ppow(const ZModPN& a);

/// Largest k with p^k | a, or kInfiniteValuation for a = 0.
int padic_val(const Integer& a, const Integer& p);

/// Iwasawa logarithm of a unit, returned modulo p^N. Only u mod p^N is
/// needed to determine the result; the series is evaluated with guard
/// digits so every returned digit is exact.
ZModPN iwasawa_log(const ZModPN& u);

/// Base-p digits of a non-negative integer, least significant first.
std::vector<Integer> digits(const Integer& value, const Integer& p, int count);

/// Renders sum d_i p^(first_exponent + i) + O(p^abs_precision) in the style
/// "3 + 2*5 + 5^3 + O(5^4)". Zero digits are omitted.
std::string format_expansion(const Integer& p, const std::vector<Integer>& digs,
                             int first_exponent, int abs_precision);

/// A p-adic number p^valuation * unit, known modulo p^(valuation + precision).
class PadicNumber {
 public:
  /// The distinguished zero known modulo p^abs_precision.
  static PadicNumber zero(const Integer& p, int abs_precision);

  /// p^shift * residue where residue is known modulo p^residue_precision.
  static PadicNumber from_residue(const Integer& p, const Integer& residue,
                                  int residue_precision, int shift = 0);

  const Integer& p() const { return p_; }
  bool is_zero() const { return zero_; }
  int valuation() const { return valuation_; }
  /// Relative precision: number of known digits starting at the valuation.
  int precision() const { return precision_; }
  int absolute_precision() const { return zero_ ? abs_ : valuation_ + precision_; }
  const Integer& unit() const { return unit_; }

  std::vector<Integer> digits() const;
  std::string to_string() const;

  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber inverse() const;

  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

 private:
  Integer p_;
  bool zero_ = true;
  int valuation_ = 0;
  int precision_ = 0;
  int abs_ = 0;
  Integer unit_;
};

}  // namespace padic
