#include "padic/frobenius.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

FrobeniusMatrix FrobeniusMatrix::operator*(const FrobeniusMatrix& o) const {
  const Integer& m = modulus->pN;
  return FrobeniusMatrix{modulus, mod(a * o.a + b * o.c, m), mod(a * o.b + b * o.d, m),
                         mod(c * o.a + d * o.c, m), mod(c * o.b + d * o.d, m)};
}

FrobeniusMatrix FrobeniusMatrix::pow(unsigned long e) const {
  FrobeniusMatrix r{modulus, 1, 0, 0, 1};
  FrobeniusMatrix base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool operator==(const FrobeniusMatrix& x, const FrobeniusMatrix& y) {
  return x.p() == y.p() && x.N() == y.N() && x.a == y.a && x.b == y.b && x.c == y.c &&
         x.d == y.d;
}

std::string FrobeniusMatrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]] mod " << p() << "^" << N();
  return os.str();
}

namespace {

using Poly = std::vector<Integer>;

int floor_log(const Integer& p, const Integer& x) {
  int r = 0;
  Integer t = p;
  while (t <= x) {
    ++r;
    t *= p;
  }
  return r;
}

// Splits a nonzero integer as p^e * u with p not dividing u.
void split_p(long x, long p, int& e, long& u) {
  e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  u = x;
}

void divexact_checked(Integer& x, const Integer& pe) {
  if (!mpz_divisible_p(x.get_mpz_t(), pe.get_mpz_t()))
    throw PrecisionLoss("working precision exhausted during cohomological reduction");
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
}

// Solves a 3x3 system over Z/m with a unit determinant.
std::array<Integer, 3> solve3(std::array<std::array<Integer, 4>, 3> M, const Integer& p,
                              const Integer& m) {
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = col; r < 3; ++r)
      if (!mpz_divisible_p(M[r][col].get_mpz_t(), p.get_mpz_t())) {
        piv = r;
        break;
      }
    if (piv < 0) throw SingularReduction("x^3 + Ax + B has a repeated root mod p");
    std::swap(M[col], M[piv]);
    Integer inv = inv_mod(M[col][col], m);
    for (int k = 0; k < 4; ++k) M[col][k] = mod(M[col][k] * inv, m);
    for (int r = 0; r < 3; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Integer f = M[r][col];
      for (int k = 0; k < 4; ++k) M[r][k] = mod(M[r][k] - f * M[col][k], m);
    }
  }
  return {M[0][3], M[1][3], M[2][3]};
}

Poly poly_mul(const Poly& x, const Poly& y, const Integer& m) {
  Poly r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  for (auto& c : r) c = mod(c, m);
  return r;
}

// Reduction data for y^2 = Q(x) = x^3 + a x + b over Z/p^W.
struct Reducer {
  Integer p, m, a, b;
  long pl;
  // For x^i (i = 0, 1, 2): x^i = U_i Q + V_i Q'. The level-r step maps
  // B Q^-r to (U + 2V'/(2r-1)) Q^-(r-1); M0 holds U_i, M1 holds 2 V_i'.
  std::array<std::array<Integer, 3>, 2> M0, M1;
  long horizontal_steps = 0, vertical_steps = 0;

  Reducer(const Integer& p_, const Integer& m_, const Integer& a_, const Integer& b_)
      : p(p_), m(m_), a(mod(a_, m_)), b(mod(b_, m_)), pl(mpz_get_si(p_.get_mpz_t())) {
    // S = Q'^{-1} mod Q, from the multiplication-by-Q' matrix on {1, x, x^2}.
    std::array<std::array<Integer, 4>, 3> M;
    const Integer c0[3] = {a, 0, 3};
    const Integer c1[3] = {-3 * b, -2 * a, 0};
    const Integer c2[3] = {0, -3 * b, -2 * a};
    for (int r = 0; r < 3; ++r) {
      M[r][0] = mod(c0[r], m);
      M[r][1] = mod(c1[r], m);
      M[r][2] = mod(c2[r], m);
      M[r][3] = r == 0 ? 1 : 0;
    }
    auto S = solve3(M, p, m);
    const Poly Sp{S[0], S[1], S[2]};
    const Poly Qp{b, a, 0, 1};
    const Poly dQ{a, 0, 3};
    for (int i = 0; i < 3; ++i) {
      Poly xi(static_cast<std::size_t>(i + 1));
      xi[static_cast<std::size_t>(i)] = 1;
      Poly V = reduce_mod_Q(poly_mul(xi, Sp, m));
      Poly num = poly_mul(V, dQ, m);  // degree <= 4
      num.resize(5);
      for (int k = 0; k <= i; ++k) num[static_cast<std::size_t>(k)] -= xi[static_cast<std::size_t>(k)];
      for (auto& c : num) c = mod(-c, m);  // x^i - V Q'
      // Divide by the monic cubic Q; the remainder must vanish.
      Poly U(2);
      for (int k = 4; k >= 3; --k) {
        Integer q = num[static_cast<std::size_t>(k)];
        U[static_cast<std::size_t>(k - 3)] = q;
        num[static_cast<std::size_t>(k)] = 0;
        num[static_cast<std::size_t>(k - 2)] = mod(num[static_cast<std::size_t>(k - 2)] - q * a, m);
        num[static_cast<std::size_t>(k - 3)] = mod(num[static_cast<std::size_t>(k - 3)] - q * b, m);
      }
      for (int k = 0; k < 3; ++k)
        if (mod(num[static_cast<std::size_t>(k)], m) != 0)
          throw InvariantViolated("Bezout decomposition failed to divide by Q");
      M0[0][static_cast<std::size_t>(i)] = U[0];
      M0[1][static_cast<std::size_t>(i)] = U[1];
      M1[0][static_cast<std::size_t>(i)] = mod(2 * V[1], m);
      M1[1][static_cast<std::size_t>(i)] = mod(4 * V[2], m);
    }
  }

  Poly reduce_mod_Q(Poly f) const {
    for (std::size_t k = f.size(); k-- > 3;) {
      Integer q = f[k];
      f[k] = 0;
      f[k - 2] -= q * a;
      f[k - 3] -= q * b;
    }
    f.resize(3);
    for (auto& c : f) c = mod(c, m);
    return f;
  }

  // Reduces sum_e coeff[e] x^(offset + step*e) Q^-s dx/y to degree <= 2 at
  // the same level. Returns numerators over the unit denominator Dn.
  std::array<Integer, 3> horizontal(const Poly& coeff, long offset, long step, long s,
                                    Integer& Dn) {
    Dn = 1;
    std::array<Integer, 3> out;
    long top = -1;
    for (long e = static_cast<long>(coeff.size()) - 1; e >= 0; --e)
      if (coeff[static_cast<std::size_t>(e)] != 0) {
        top = offset + step * e;
        break;
      }
    if (top < 0) return out;

    auto fetch = [&](long deg) -> Integer {
      if (deg < offset) return 0;
      long r = deg - offset;
      if (r % step != 0) return 0;
      long e = r / step;
      if (e >= static_cast<long>(coeff.size())) return 0;
      const Integer& c = coeff[static_cast<std::size_t>(e)];
      if (c == 0) return 0;
      return mod(c * Dn, m);
    };

    // w[i] is the numerator of the x^(cur - i) coefficient.
    Integer w[4];
    long cur = top;
    for (int i = 0; i < 4; ++i) w[i] = fetch(cur - i);
    Integer t1, t2, pe;
    for (; cur >= 3; --cur) {
      if (w[0] != 0) {
        const long k = cur - 2;
        const long delta = 2 * k + 3 - 6 * s;
        int e;
        long u;
        split_p(delta, pl, e, u);
        t1 = w[0] * a;
        t1 *= (2 * k + 1 - 2 * s);
        t2 = w[0] * b;
        t2 *= 2 * k;
        if (e > 0) {
          mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
          t1 = mod(t1, m);
          t2 = mod(t2, m);
          divexact_checked(t1, pe);
          divexact_checked(t2, pe);
        }
        if (u != 1) {
          w[1] *= u;
          w[2] *= u;
          w[3] *= u;
          Dn = mod(Dn * u, m);
          w[1] = mod(w[1], m);
        }
        w[2] = mod(w[2] - t1, m);
        w[3] = mod(w[3] - t2, m);
        ++horizontal_steps;
      }
      w[0] = std::move(w[1]);
      w[1] = std::move(w[2]);
      w[2] = std::move(w[3]);
      w[3] = fetch(cur - 4);
    }
    for (int i = 0; i < 4; ++i) {
      long deg = cur - i;
      if (deg >= 0 && deg <= 2) out[static_cast<std::size_t>(deg)] = w[i];
    }
    return out;
  }

  // One vertical step at level r >= 1 on numerators v over Dv.
  void vertical(std::array<Integer, 3>& v, Integer& Dv, long r) {
    const long delta = 2 * r - 1;
    int e;
    long u;
    split_p(delta, pl, e, u);
    Integer n[2];
    for (int j = 0; j < 2; ++j) {
      Integer s0 = M0[j][0] * v[0] + M0[j][1] * v[1] + M0[j][2] * v[2];
      Integer s1 = M1[j][0] * v[0] + M1[j][1] * v[1] + M1[j][2] * v[2];
      n[j] = mod(s0 * delta + s1, m);
    }
    if (e > 0) {
      Integer pe = ipow(p, static_cast<unsigned long>(e));
      divexact_checked(n[0], pe);
      divexact_checked(n[1], pe);
    }
    v[0] = n[0];
    v[1] = n[1];
    v[2] = 0;
    if (u != 1) Dv = mod(Dv * u, m);
    ++vertical_steps;
  }
};

struct Plan {
  int lambda, K, W;
};

Plan make_plan(const Integer& p, int N, int extra) {
  int lambda = 1, K = N + 2;
  for (int it = 0; it < 8; ++it) {
    Integer pK = p * K;
    int l = floor_log(p, 12 * pK + 12) + floor_log(p, 2 * pK + 2) + 1 + extra;
    int k = N + l + 1;
    if (l == lambda && k == K) break;
    lambda = l;
    K = k;
  }
  return Plan{lambda, K, N + 2 * lambda + 2};
}

std::array<Integer, 2> column_once(const Integer& p, const Integer& A, const Integer& B, int N,
                                   long h0, long h1, const Plan& plan, KedlayaStats* stats) {
  if (!mpz_fits_slong_p(p.get_mpz_t()) || p > 100000000)
    throw InvalidArgument("prime too large for the O(p N^2) Frobenius computation");
  const long pl = mpz_get_si(p.get_mpz_t());
  const int K = plan.K;
  const Integer m = ipow(p, static_cast<unsigned long>(plan.W));
  Reducer red(p, m, A, B);

  // D_j = p^(1+lambda) sum_{k=j}^{K-1} C_k binom(k, j) (-1)^(k-j), C_k = binom(-1/2, k).
  std::vector<Integer> D(static_cast<std::size_t>(K));
  {
    std::vector<Integer> row{1};
    const Integer inv4 = inv_mod(Integer(4), m);
    Integer inv4k = 1, Ck;
    for (int k = 0; k < K; ++k) {
      if (k > 0) inv4k = mod(inv4k * inv4, m);
      // binom(-1/2, k) = (-1)^k binom(2k, k) / 4^k
      mpz_bin_uiui(Ck.get_mpz_t(), 2ul * static_cast<unsigned long>(k), static_cast<unsigned long>(k));
      Ck = mod(Ck * inv4k, m);
      if (k % 2) Ck = -Ck;
      if (k > 0) {
        std::vector<Integer> next(row.size() + 1);
        next[0] = 1;
        for (std::size_t j = 1; j < row.size(); ++j) next[j] = mod(row[j - 1] + row[j], m);
        next[row.size()] = 1;
        row = std::move(next);
      }
      for (int j = 0; j <= k; ++j) {
        Integer t = Ck * row[static_cast<std::size_t>(j)];
        if ((k - j) % 2) t = -t;
        D[static_cast<std::size_t>(j)] += t;
      }
    }
    const Integer scale = ipow(p, static_cast<unsigned long>(1 + plan.lambda));
    for (auto& x : D) x = mod(x * scale, m);
  }

  // Q(u)^j coefficients, built incrementally.
  Poly Qj{1};
  const Poly Qp{mod(B, m), mod(A, m), 0, 1};
  std::vector<std::array<Integer, 3>> pieces(static_cast<std::size_t>(K));
  std::vector<Integer> piece_den(static_cast<std::size_t>(K));
  for (int j = 0; j < K; ++j) {
    if (j > 0) Qj = poly_mul(Qj, Qp, m);
    // H(u) Q(u)^j D_j with H = h0 + h1 u.
    Poly G(Qj.size() + 1);
    for (std::size_t e = 0; e < Qj.size(); ++e) {
      G[e] += h0 * Qj[e];
      G[e + 1] += h1 * Qj[e];
    }
    for (auto& c : G) c = mod(c * D[static_cast<std::size_t>(j)], m);
    const long s = (pl * (2 * j + 1) - 1) / 2;
    pieces[static_cast<std::size_t>(j)] =
        red.horizontal(G, pl - 1, pl, s, piece_den[static_cast<std::size_t>(j)]);
  }

  std::array<Integer, 3> v{0, 0, 0};
  Integer Dv = 1;
  int next_piece = K - 1;
  const long top = (pl * (2 * (K - 1) + 1) - 1) / 2;
  for (long r = top; r >= 1; --r) {
    if (next_piece >= 0 && r == (pl * (2 * next_piece + 1) - 1) / 2) {
      const auto jj = static_cast<std::size_t>(next_piece);
      Integer f = mod(Dv * inv_mod(piece_den[jj], m), m);
      for (int i = 0; i < 3; ++i)
        v[static_cast<std::size_t>(i)] = mod(v[static_cast<std::size_t>(i)] + f * pieces[jj][static_cast<std::size_t>(i)], m);
      --next_piece;
    }
    red.vertical(v, Dv, r);
  }

  const Integer Dinv = inv_mod(Dv, m);
  const Integer plam = ipow(p, static_cast<unsigned long>(plan.lambda));
  const Integer pN = ipow(p, static_cast<unsigned long>(N));
  std::array<Integer, 2> out;
  for (int i = 0; i < 2; ++i) {
    Integer c = mod(v[static_cast<std::size_t>(i)] * Dinv, m);
    divexact_checked(c, plam);
    out[static_cast<std::size_t>(i)] = mod(c, pN);
  }
  if (stats) {
    stats->working_precision = plan.W;
    stats->scale = plan.lambda;
    stats->terms = K;
    stats->horizontal_steps += red.horizontal_steps;
    stats->vertical_steps += red.vertical_steps;
  }
  return out;
}

void check_curve(const Integer& p, const Integer& A, const Integer& B) {
  if (p < 5 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw InvalidArgument("p must be a prime ≥ 5");
  Integer disc = mod(-4 * A * A * A - 27 * B * B, p);
  if (disc == 0) throw SingularReduction("x^3 + Ax + B has a repeated root mod p");
}

}  // namespace

std::array<Integer, 2> kedlaya_column(const Integer& p, const Integer& A, const Integer& B, int N,
                                      long h0, long h1, KedlayaStats* stats, int extra_guard) {
  check_curve(p, A, B);
  if (N < 1) throw InvalidArgument("precision must be >= 1");
  for (int attempt = 0;; ++attempt) {
    try {
      if (stats) stats->attempts = attempt + 1;
      return column_once(p, A, B, N, h0, h1, make_plan(p, N, extra_guard + 2 * attempt), stats);
    } catch (const PrecisionLoss&) {
      if (attempt >= 3) throw;
    }
  }
}

FrobeniusMatrix kedlaya_frobenius_matrix(const Integer& p, const Integer& A, const Integer& B,
                                         int N, KedlayaStats* stats) {
  check_curve(p, A, B);
  ModulusPtr mod_ = make_modulus(p, N);
  for (int extra = 0;; extra += 2) {
    auto c0 = kedlaya_column(p, A, B, N, 1, 0, stats, extra);
    auto c1 = kedlaya_column(p, A, B, N, 0, 1, stats, extra);
    FrobeniusMatrix F{mod_, c0[0], c1[0], c0[1], c1[1]};
    if (F.det() == mod(p, mod_->pN)) return F;
    if (extra >= 6) throw InvariantViolated("Frobenius determinant is not p");
  }
}

FrobeniusMatrix kedlaya_frobenius_matrix(const ZModPN& A, const ZModPN& B, int N) {
  if (A.p() != B.p()) throw ModulusMismatch("coefficients over different primes");
  return kedlaya_frobenius_matrix(A.p(), A.value(), B.value(), N);
}

ZModPN e2_from_matrix(const FrobeniusMatrix& F, int N) {
  if (N > F.N()) throw InvalidArgument("matrix is not known to the requested precision");
  ModulusPtr m = make_modulus(F.p(), N);
  FrobeniusMatrix G{m, mod(F.a, m->pN), mod(F.b, m->pN), mod(F.c, m->pN), mod(F.d, m->pN)};
  FrobeniusMatrix P = G.pow(static_cast<unsigned long>(N));
  ZModPN D(m, P.d);
  if (!D.is_unit()) throw InvariantViolated("bottom-right entry of F^N is not a unit");
  return ZModPN(m, -12 * P.b) * inv_mod_ppow(D);
}

CompletedMatrix complete_matrix_from_column(const ZModPN& top, const ZModPN& bottom,
                                            const ZModPN& trace, const ZModPN& det) {
  const ModulusPtr& m = top.modulus_ptr();
  const Integer& p = m->p;
  const int N = m->N;
  if (top.value() == 0) throw DegenerateColumn("top-right entry vanishes mod p^N");
  const int v = padic_val(top.value(), p);
  ZModPN A = trace - bottom;
  ZModPN num = A * bottom - det;
  if (!mpz_divisible_p(num.value().get_mpz_t(), ipow(p, static_cast<unsigned long>(v)).get_mpz_t()))
    throw InvariantViolated("trace and determinant inconsistent with the column");
  Integer q = num.value() / ipow(p, static_cast<unsigned long>(v));
  Integer u = top.value() / ipow(p, static_cast<unsigned long>(v));
  Integer C = mod(q * inv_mod(u, m->pN), m->pN);
  CompletedMatrix r;
  r.F = FrobeniusMatrix{m, A.value(), top.value(), C, bottom.value()};
  r.precision = {N, N, N - v, N};
  if (v > 0) r.F.c = mod(r.F.c, ipow(p, static_cast<unsigned long>(N - v)));
  return r;
}

ColumnTrickResult kedlaya_with_column_trick(const Integer& p, const Integer& A, const Integer& B,
                                            int N, const Integer& ap) {
  check_curve(p, A, B);
  ModulusPtr m = make_modulus(p, N);
  ZModPN tr(m, ap), dt(m, p);

  auto probe = kedlaya_column(p, A, B, 1, 0, 1);
  ColumnTrickResult out;
  if (probe[0] % p != 0) {
    auto col = kedlaya_column(p, A, B, N, 0, 1);
    auto c = complete_matrix_from_column(ZModPN(m, col[0]), ZModPN(m, col[1]), tr, dt);
    out.F = c.F;
    return out;
  }
  // On {dx/y, (1+x) dx/y}: F((1+x) dx/y) = c0 dx/y + c1 x dx/y = (c0 - c1) w0 + c1 w1.
  out.alternate_basis = true;
  auto col = kedlaya_column(p, A, B, N, 1, 1);
  ZModPN top(m, col[0] - col[1]), bottom(m, col[1]);
  auto c = complete_matrix_from_column(top, bottom, tr, dt);
  if (c.precision[2] < N) throw DegenerateColumn("alternate basis still has a non-unit entry");
  // Back to {dx/y, x dx/y}: F = P F' P^-1 with P = [[1, 1], [0, 1]].
  const FrobeniusMatrix& G = c.F;
  FrobeniusMatrix P{m, 1, 1, 0, 1}, Pinv{m, 1, mod(Integer(-1), m->pN), 0, 1};
  out.F = P * G * Pinv;
  return out;
}

std::array<Integer, 2> short_model_residues(const CurveQ& E, const Integer& p, int e) {
  Integer m = ipow(p, static_cast<unsigned long>(e));
  Integer A = mod(-E.c4 * inv_mod(Integer(48), m), m);
  Integer B = mod(-E.c6 * inv_mod(Integer(864), m), m);
  return {A, B};
}

E2Result compute_e2_detailed(const CurveQ& E, const Integer& p, int N, const E2Options& opts) {
  if (p < 5 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw InvalidArgument("p must be a prime ≥ 5");
  if (N < 1) throw InvalidArgument("precision must be >= 1");
  if (mpz_divisible_p(E.disc.get_mpz_t(), p.get_mpz_t()))
    throw BadReduction("p divides the discriminant");

  // Extra digits let the short-model residues stand in for exact rationals.
  auto [A, B] = short_model_residues(E, p, N + 64);
  std::optional<Integer> ap;
  if (p <= opts.enumeration_budget)
    ap = count_points(E, mpz_get_ui(p.get_mpz_t())).ap;

  E2Result r{ZModPN(make_modulus(p, N), 0), FrobeniusMatrix{}, false, false};
  if (opts.column_trick) {
    if (!ap) throw InvalidArgument("the column trick needs a_p from point counting");
    auto ct = kedlaya_with_column_trick(p, A, B, N, *ap);
    r.F = ct.F;
    r.alternate_basis = ct.alternate_basis;
  } else {
    r.F = kedlaya_frobenius_matrix(p, A, B, N);
  }
  if (ap) {
    if (r.F.trace() != mod(*ap, r.F.modulus->pN))
      throw InvariantViolated("Frobenius trace differs from a_p");
    r.trace_checked = true;
  }
  r.e2 = e2_from_matrix(r.F, N);
  return r;
}

ZModPN compute_e2(const CurveQ& E, const Integer& p, int N, bool use_column_trick) {
  E2Options o;
  o.column_trick = use_column_trick;
  return compute_e2_detailed(E, p, N, o).e2;
}

}  // namespace padic
