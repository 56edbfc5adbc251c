#include "padic/curve.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace padic {

CurveQ CurveQ::from_ainvariants(const Integer& a1, const Integer& a2, const Integer& a3,
                                const Integer& a4, const Integer& a6) {
  CurveQ E;
  E.a1 = a1;
  E.a2 = a2;
  E.a3 = a3;
  E.a4 = a4;
  E.a6 = a6;
  E.b2 = a1 * a1 + 4 * a2;
  E.b4 = 2 * a4 + a1 * a3;
  E.b6 = a3 * a3 + 4 * a6;
  E.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  E.c4 = E.b2 * E.b2 - 24 * E.b4;
  E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
  E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 +
           9 * E.b2 * E.b4 * E.b6;
  if (E.disc == 0) throw InvalidArgument("curve is singular (discriminant 0)");
  return E;
}

std::string CurveQ::to_string() const {
  std::ostringstream os;
  os << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
  return os.str();
}

RationalPoint RationalPoint::infinity() { return RationalPoint(); }

RationalPoint RationalPoint::from_integers(const Integer& alpha, const Integer& beta,
                                           const Integer& d) {
  if (d < 1) throw InvalidArgument("denominator d must be positive");
  Integer g1 = gcd(alpha, d), g2 = gcd(beta, d);
  if (g1 != 1 || g2 != 1) throw InvalidArgument("point coordinates not in lowest terms");
  RationalPoint P;
  P.inf_ = false;
  P.alpha_ = alpha;
  P.beta_ = beta;
  P.d_ = d;
  return P;
}

RationalPoint RationalPoint::from_affine(const Rational& x0, const Rational& y0) {
  Rational x = x0, y = y0;
  x.canonicalize();
  y.canonicalize();
  Integer d;
  mpz_sqrt(d.get_mpz_t(), x.get_den().get_mpz_t());
  if (d * d != x.get_den() || d * d * d != y.get_den())
    throw InvalidArgument("point denominators are not of the form d^2, d^3");
  return from_integers(x.get_num(), y.get_num(), d);
}

Rational RationalPoint::x() const { return Rational(alpha_, d_ * d_); }
Rational RationalPoint::y() const { return Rational(beta_, d_ * d_ * d_); }

bool operator==(const RationalPoint& a, const RationalPoint& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.alpha_ == b.alpha_ && a.beta_ == b.beta_ && a.d_ == b.d_;
}

std::string RationalPoint::to_string() const {
  if (inf_) return "O";
  std::ostringstream os;
  Rational x = this->x(), y = this->y();
  x.canonicalize();
  y.canonicalize();
  os << "(" << x.get_str() << ", " << y.get_str() << ")";
  return os.str();
}

bool on_curve(const CurveQ& E, const RationalPoint& P) {
  if (P.is_infinity()) return true;
  Rational x = P.x(), y = P.y();
  Rational lhs = y * y + Rational(E.a1) * x * y + Rational(E.a3) * y;
  Rational rhs = x * x * x + Rational(E.a2) * x * x + Rational(E.a4) * x + Rational(E.a6);
  return lhs == rhs;
}

RationalPoint point_neg(const CurveQ& E, const RationalPoint& P) {
  if (P.is_infinity()) return P;
  Rational y = -P.y() - Rational(E.a1) * P.x() - Rational(E.a3);
  return RationalPoint::from_affine(P.x(), y);
}

RationalPoint point_add(const CurveQ& E, const RationalPoint& P, const RationalPoint& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const Rational a1(E.a1), a2(E.a2), a3(E.a3), a4(E.a4);
  Rational x1 = P.x(), y1 = P.y(), x2 = Q.x(), y2 = Q.y();
  Rational lambda;
  if (x1 == x2) {
    Rational denom = 2 * y1 + a1 * x1 + a3;
    if (y1 != y2 || denom == 0) return RationalPoint::infinity();
    lambda = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom;
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rational nu = y1 - lambda * x1;
  Rational x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
  Rational y3 = -(lambda + a1) * x3 - nu - a3;
  return RationalPoint::from_affine(x3, y3);
}

RationalPoint scalar_mul(const CurveQ& E, const Integer& n, const RationalPoint& P) {
  if (n < 0) return scalar_mul(E, -n, point_neg(E, P));
  RationalPoint acc = RationalPoint::infinity();
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = point_add(E, acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = point_add(E, acc, P);
  }
  return acc;
}

bool is_torsion(const CurveQ& E, const RationalPoint& P) {
  RationalPoint acc = P;
  for (int k = 1; k <= 12; ++k) {
    if (acc.is_infinity()) return true;
    acc = point_add(E, acc, P);
  }
  return false;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t reduce_mod(const Integer& a, std::uint64_t p) {
  return mpz_fdiv_ui(a.get_mpz_t(), p);
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  int s = 1;
  a %= n;
  while (a) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

}  // namespace

PointCount count_points(const CurveQ& E, std::uint64_t p) {
  if (p < 5 || mpz_probab_prime_p(Integer(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0)
    throw InvalidArgument("p must be a prime ≥ 5");
  if (mpz_divisible_ui_p(E.disc.get_mpz_t(), p))
    throw BadReduction("p divides the discriminant");

  // Number of y with y^2 + (a1 x + a3) y = x^3 + ... equals 1 + chi(f(x)),
  // f = 4x^3 + b2 x^2 + 2 b4 x + b6.
  const std::uint64_t b2 = reduce_mod(E.b2, p), b4 = reduce_mod(2 * E.b4, p),
                      b6 = reduce_mod(E.b6, p);
  std::int64_t sum = 0;
  const bool table = p <= (1ull << 27);
  std::vector<std::int8_t> chi;
  if (table) {
    chi.assign(p, -1);
    chi[0] = 0;
    for (std::uint64_t i = 1; i <= (p - 1) / 2; ++i) chi[mulmod(i, i, p)] = 1;
  }
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t f = (mulmod(mulmod(4, x, p) + b2, x, p) + b4) % p;
    f = (mulmod(f, x, p) + b6) % p;
    sum += table ? chi[f] : jacobi(f, p);
  }
  PointCount out;
  out.n1 = Integer(static_cast<unsigned long>(p)) + 1 + Integer(static_cast<long>(sum));
  out.ap = -Integer(static_cast<long>(sum));
  if (out.ap * out.ap > 4 * Integer(static_cast<unsigned long>(p)))
    throw InvariantViolated("Hasse bound violated by point count");
  return out;
}

bool is_good_ordinary(const CurveQ& E, std::uint64_t p) {
  if (mpz_divisible_ui_p(E.disc.get_mpz_t(), p)) return false;
  PointCount c = count_points(E, p);
  return !mpz_divisible_ui_p(c.ap.get_mpz_t(), p);
}

ShortModel short_weierstrass_model(const CurveQ& E) {
  ShortModel m;
  m.A = Rational(-E.c4, 48);
  m.B = Rational(-E.c6, 864);
  m.A.canonicalize();
  m.B.canonicalize();
  return m;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(std::uint64_t n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(Integer(static_cast<unsigned long>(n)).get_mpz_t(), 30)) {
    out.emplace_back(static_cast<unsigned long>(n));
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

std::vector<Integer> prime_factors(const Integer& n0) {
  if (n0 == 0) throw InvalidArgument("cannot factor zero");
  Integer n = abs(n0);
  std::vector<Integer> out;
  for (unsigned long d = 2; d <= 1000000ul; d += (d == 2 ? 1 : 2)) {
    if (Integer(d) * d > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out.emplace_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
      out.push_back(n);
    } else if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
      throw FactorizationTooHard("discriminant cofactor " + n.get_str() + " exceeds 2^64");
    } else {
      std::vector<Integer> more;
      factor_u64(mpz_get_ui(n.get_mpz_t()), more);
      out.insert(out.end(), more.begin(), more.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool reduces_to_singular(const CurveQ& E, const RationalPoint& P, const Integer& ell) {
  if (P.is_infinity()) return false;
  if (mpz_divisible_p(P.d().get_mpz_t(), ell.get_mpz_t())) return false;  // reduces to O
  Integer dinv = inv_mod(P.d(), ell);
  Integer x = mod(P.alpha() * dinv * dinv, ell);
  Integer y = mod(P.beta() * dinv * dinv * dinv, ell);
  Integer fx = mod(E.a1 * y - 3 * x * x - 2 * E.a2 * x - E.a4, ell);
  Integer fy = mod(2 * y + E.a1 * x + E.a3, ell);
  return fx == 0 && fy == 0;
}

ReductionChecks check_A1_A2(const CurveQ& E, const RationalPoint& P, const Integer& p) {
  if (mpz_divisible_p(E.disc.get_mpz_t(), p.get_mpz_t()))
    throw BadReduction("p divides the discriminant");
  ReductionChecks r;
  r.a1_holds = P.is_infinity() || mpz_divisible_p(P.d().get_mpz_t(), p.get_mpz_t());
  r.a2_holds = true;
  for (const Integer& ell : prime_factors(E.disc))
    if (reduces_to_singular(E, P, ell)) r.a2_holds = false;
  return r;
}

}  // namespace padic
