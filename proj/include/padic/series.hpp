#pragma once

#include <string>
#include <vector>

#include "padic/zmod.hpp"

namespace padic {

/// Truncated Laurent-shifted power series over Z/p^N Z:
///   t^offset * (c_0 + c_1 t + ... + c_{len-1} t^{len-1}) + O(t^{offset+len}).
/// Coefficients below the offset are exactly zero.
class PadicSeries {
 public:
  PadicSeries() = default;
  PadicSeries(ModulusPtr m, std::vector<Integer> coeffs, int offset = 0);

  static PadicSeries zero(ModulusPtr m, int len, int offset = 0);
  static PadicSeries one(ModulusPtr m, int len);
  /// Convenience for literals: coefficients given as signed longs.
  static PadicSeries from_longs(ModulusPtr m, const std::vector<long>& c, int offset = 0);

  int size() const { return static_cast<int>(coeffs_.size()); }
  int offset() const { return offset_; }
  /// Exponent e such that the series is known up to O(t^e).
  int order() const { return offset_ + size(); }

  const Integer& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  /// Coefficient of t^e (zero below the offset). e must be below order().
  Integer at_power(int e) const;
  ZModPN coeff(int i) const { return ZModPN(mod_, coeffs_[static_cast<std::size_t>(i)]); }

  const ModulusPtr& modulus_ptr() const { return mod_; }
  const Modulus& modulus() const { return *mod_; }

  /// Keeps the first len stored coefficients.
  PadicSeries truncated(int len) const;
  /// Drops every term of exponent >= e.
  PadicSeries truncated_order(int e) const;
  /// Re-stores the same series starting at a lower offset (pads zeros).
  PadicSeries with_offset(int new_offset) const;
  /// Multiplies by t^k.
  PadicSeries shifted(int k) const;
  /// Reinterprets the stored residues in another modulus with the same p.
  PadicSeries lifted(ModulusPtr m) const;

  PadicSeries operator-() const;
  PadicSeries scaled(const Integer& s) const;
  friend PadicSeries operator+(const PadicSeries& a, const PadicSeries& b);
  friend PadicSeries operator-(const PadicSeries& a, const PadicSeries& b);
  friend bool operator==(const PadicSeries& a, const PadicSeries& b);

  std::string to_string() const;

 private:
  ModulusPtr mod_;
  std::vector<Integer> coeffs_;
  int offset_ = 0;
};

/// Product of two polynomials with coefficients in [0, m), truncated to
/// trunc terms. Uses Kronecker substitution above the schoolbook cutoff.
std::vector<Integer> poly_mul_trunc(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                    const Integer& m, std::size_t trunc);
std::vector<Integer> poly_mul_schoolbook(const std::vector<Integer>& a,
                                         const std::vector<Integer>& b, const Integer& m,
                                         std::size_t trunc);

inline constexpr std::size_t kSchoolbookCutoff = 32;

PadicSeries series_mul(const PadicSeries& f, const PadicSeries& g, int trunc);
/// Same contract as series_mul, always quadratic time.
PadicSeries series_mul_schoolbook(const PadicSeries& f, const PadicSeries& g, int trunc);

/// Newton inversion; the result carries offset -f.offset().
PadicSeries series_inv(const PadicSeries& f, int trunc);

struct Integration {
  PadicSeries series;
  /// loss[i] = v_p(exponent) for stored coefficient i: that coefficient is
  /// only known modulo p^(N - loss[i]).
  std::vector<int> loss;
};

/// Formal antiderivative with zero constant term.
Integration series_integrate(const PadicSeries& f);

PadicSeries series_derivative(const PadicSeries& f);

/// Series whose t^k coefficient is known modulo p^(N-k), i.e. an element of
/// Z_p[[t]] modulo the ideal I_N = (p^N, p^(N-1) t, ..., t^N). The constant
/// term is not represented.
class IdealSeries {
 public:
  IdealSeries(Integer p, int N, std::vector<Integer> coeffs);

  const Integer& p() const { return p_; }
  int N() const { return N_; }
  /// Coefficient of t^k for 1 <= k < N, reduced modulo p^(N-k).
  const Integer& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  int precision(int k) const { return N_ - k; }

  /// Reduces to I_M for M <= N.
  IdealSeries truncated(int M) const;

  friend bool operator==(const IdealSeries& a, const IdealSeries& b);
  std::string to_string() const;

 private:
  Integer p_;
  int N_;
  std::vector<Integer> coeffs_;  // index 0 unused
};

}  // namespace padic
