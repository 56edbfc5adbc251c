#pragma once

#include <optional>
#include <string>

#include "padic/divpoly.hpp"
#include "padic/sigma.hpp"

namespace padic {

enum class Normalization { Standard, MST };

struct HeightJob {
  CurveQ E;
  RationalPoint P;
  Integer p;
  int M = 2;
  Integer n2 = 1;
  Normalization normalization = Normalization::Standard;
  bool column_trick = false;
};

struct PrecisionLedger {
  Integer n1, n, m;
  int v = 0;        ///< v_p(n)
  int M_prime = 0;  ///< M + 2 v
  int N_sigma = 0;  ///< M' + 1
  int N_e2 = 0;     ///< M' - 2, or 0 when sigma needs no E2
  Integer R;        ///< p^M'
};

/// Counts points to obtain n1 and derives every precision the job needs.
PrecisionLedger precision_ledger(const HeightJob& job);

struct Triple {
  Integer alpha, beta, d;
};

/// u = (-alpha/beta)(1 + sum_k c_(k+1) t^k) mod p^M' with t = -d alpha/beta.
/// Throws A1Violated when p does not divide d.
ZModPN evaluate_sigma_ratio(const SigmaSeries& sigma, const Triple& triple, const Integer& p,
                            int M_prime);

struct HeightDiagnostics {
  PrecisionLedger ledger;
  Integer n2;
  Triple triple;          ///< (alpha, beta, d) of mQ mod p^M', up to the shared sign
  Integer log_argument;   ///< u mod p^M'
  Integer log_value;      ///< log_p(u) mod p^M'
  std::optional<Integer> e2;
  bool e2_trace_checked = false;
  bool n2_divisible_by_p = false;
};

struct HeightResult {
  PadicNumber value;
  int precision = 0;  ///< the value is stated modulo p^precision
  HeightDiagnostics diagnostics;

  std::string to_string() const { return value.to_string(); }
};

/// h_p(P) = (2/n^2) log_p(sigma(mQ)/d(mQ)) with Q = n2 P, known mod p^M.
HeightResult padic_height(const HeightJob& job);

}  // namespace padic
