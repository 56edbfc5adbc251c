#pragma once

#include <array>
#include <optional>

#include "padic/curve.hpp"

namespace padic {

/// Matrix of the p-power Frobenius on {dx/y, x dx/y} for y^2 = x^3 + A x + B.
/// Column j holds the coordinates of the image of the j-th basis element.
struct FrobeniusMatrix {
  ModulusPtr modulus;
  Integer a, b, c, d;  ///< [[a, b], [c, d]], residues mod p^N

  const Integer& p() const { return modulus->p; }
  int N() const { return modulus->N; }
  Integer trace() const { return mod(a + d, modulus->pN); }
  Integer det() const { return mod(a * d - b * c, modulus->pN); }
  FrobeniusMatrix operator*(const FrobeniusMatrix& o) const;
  FrobeniusMatrix pow(unsigned long e) const;
  friend bool operator==(const FrobeniusMatrix& x, const FrobeniusMatrix& y);
  std::string to_string() const;
};

struct KedlayaStats {
  int working_precision = 0;  ///< W: digits carried internally
  int scale = 0;              ///< lambda: inputs are multiplied by p^lambda
  int terms = 0;              ///< K: binomial terms of the Frobenius expansion
  int attempts = 0;
  long horizontal_steps = 0;
  long vertical_steps = 0;
};

/// Coordinates (on {dx/y, x dx/y}) of Frobenius applied to (h0 + h1 x) dx/y,
/// correct mod p^N. A and B are residues of the short-model coefficients.
std::array<Integer, 2> kedlaya_column(const Integer& p, const Integer& A, const Integer& B, int N,
                                      long h0, long h1, KedlayaStats* stats = nullptr,
                                      int extra_guard = 0);

/// Both columns; asserts det = p mod p^N (retrying with more guard digits
/// before giving up). Throws SingularReduction if x^3 + Ax + B is not
/// squarefree mod p.
FrobeniusMatrix kedlaya_frobenius_matrix(const Integer& p, const Integer& A, const Integer& B,
                                         int N, KedlayaStats* stats = nullptr);
FrobeniusMatrix kedlaya_frobenius_matrix(const ZModPN& A, const ZModPN& B, int N);

/// E2 = -12 B/D where F^N = [[A, B], [C, D]].
ZModPN e2_from_matrix(const FrobeniusMatrix& F, int N);

/// Matrix completed from its second column and the trace and determinant.
/// precision[i] is the exponent e such that entry i (a, b, c, d order) is
/// correct mod p^e.
struct CompletedMatrix {
  FrobeniusMatrix F;
  std::array<int, 4> precision{};
};
CompletedMatrix complete_matrix_from_column(const ZModPN& top, const ZModPN& bottom,
                                            const ZModPN& trace, const ZModPN& det);

struct ColumnTrickResult {
  FrobeniusMatrix F;
  bool alternate_basis = false;  ///< mod-p probe found a non-unit top-right entry
};

/// One Kedlaya column at full precision plus trace/determinant completion,
/// switching to {dx/y, (1+x) dx/y} when the probe shows a non-unit entry.
ColumnTrickResult kedlaya_with_column_trick(const Integer& p, const Integer& A, const Integer& B,
                                            int N, const Integer& ap);

/// Residues mod p^e of the short-model coefficients A = -c4/48, B = -c6/864.
std::array<Integer, 2> short_model_residues(const CurveQ& E, const Integer& p, int e);

struct E2Options {
  bool column_trick = false;
  /// Trace checks are skipped above this prime (point counting cost).
  unsigned long enumeration_budget = 1000000;
};

struct E2Result {
  ZModPN e2;
  FrobeniusMatrix F;
  bool trace_checked = false;
  bool alternate_basis = false;
};

E2Result compute_e2_detailed(const CurveQ& E, const Integer& p, int N, const E2Options& opts = {});
ZModPN compute_e2(const CurveQ& E, const Integer& p, int N, bool use_column_trick = false);

}  // namespace padic
