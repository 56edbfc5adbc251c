#include "padic/zmod.hpp"

#include <sstream>

namespace padic {

ModulusPtr make_modulus_unchecked(const Integer& p, int N) {
  if (N < 1) throw InvalidArgument("precision exponent must be >= 1");
  if (p < 2) throw InvalidArgument("modulus base must be >= 2");
  auto m = std::make_shared<Modulus>();
  m->p = p;
  m->N = N;
  m->pN = ipow(p, static_cast<unsigned long>(N));
  return m;
}

ModulusPtr make_modulus(const Integer& p, int N) {
  if (p < 5 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw InvalidArgument("p must be a prime ≥ 5");
  return make_modulus_unchecked(p, N);
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw NotAUnit("element is not invertible modulo " + m.get_str());
  return r;
}

ZModPN::ZModPN(ModulusPtr m, const Integer& v) : mod_(std::move(m)) {
  value_ = mod(v, mod_->pN);
}

bool ZModPN::is_unit() const {
  return mpz_divisible_p(value_.get_mpz_t(), mod_->p.get_mpz_t()) == 0;
}

void ZModPN::check_same(const ZModPN& o) const {
  if (mod_ == o.mod_) return;
  if (mod_->p != o.mod_->p || mod_->N != o.mod_->N)
    throw ModulusMismatch("operands live in different rings Z/p^N Z");
}

ZModPN& ZModPN::operator+=(const ZModPN& o) {
  check_same(o);
  value_ += o.value_;
  if (value_ >= mod_->pN) value_ -= mod_->pN;
  return *this;
}

ZModPN& ZModPN::operator-=(const ZModPN& o) {
  check_same(o);
  value_ -= o.value_;
  if (value_ < 0) value_ += mod_->pN;
  return *this;
}

ZModPN& ZModPN::operator*=(const ZModPN& o) {
  check_same(o);
  value_ *= o.value_;
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), mod_->pN.get_mpz_t());
  return *this;
}

ZModPN ZModPN::operator-() const { return ZModPN(mod_, -value_); }

bool operator==(const ZModPN& a, const ZModPN& b) {
  return a.mod_->p == b.mod_->p && a.mod_->N == b.mod_->N && a.value_ == b.value_;
}

ZModPN ZModPN::pow(const Integer& e) const {
  if (e < 0) return inv_mod_ppow(*this).pow(-e);
  Integer r;
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), mod_->pN.get_mpz_t());
  return ZModPN(mod_, r);
}

ZModPN ZModPN::truncate(int M) const {
  if (M > mod_->N) throw InvalidArgument("cannot truncate to a finer modulus");
  if (M == mod_->N) return *this;
  return ZModPN(make_modulus_unchecked(mod_->p, M), value_);
}

ZModPN inv_mod_ppow(const ZModPN& a) {
  if (!a.is_unit()) throw NotAUnit(a.value().get_str() + " is divisible by p");
  return ZModPN(a.modulus_ptr(), inv_mod(a.value(), a.modulus().pN));
}

int padic_val(const Integer& a, const Integer& p) {
  if (a == 0) return kInfiniteValuation;
  Integer t = a;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

ZModPN iwasawa_log(const ZModPN& u) {
  if (!u.is_unit()) throw NotAUnit("Iwasawa logarithm needs a unit argument");
  const Integer& p = u.p();
  const int N = u.N();

  // Largest k whose term x^k / k can still be nonzero mod p^N.
  long kmax = 1;
  auto floor_log = [&](long k) {
    int r = 0;
    Integer t = p;
    while (t <= k) {
      ++r;
      t *= p;
    }
    return r;
  };
  while ((kmax + 1) - floor_log(kmax + 1) < N) ++kmax;
  const int guard = floor_log(kmax) + 1;
  const Integer work = ipow(p, static_cast<unsigned long>(N + guard));

  Integer x;
  Integer pm1 = p - 1;
  mpz_powm(x.get_mpz_t(), u.value().get_mpz_t(), pm1.get_mpz_t(), work.get_mpz_t());
  x -= 1;
  if (x < 0) x += work;

  Integer sum = 0, power = 1;
  for (long k = 1; k <= kmax; ++k) {
    power *= x;
    power = mod(power, work);
    if (power == 0) break;
    Integer kk = k;
    Integer term = power;
    int v = 0;
    while (mpz_divisible_p(kk.get_mpz_t(), p.get_mpz_t())) {
      kk /= p;
      ++v;
    }
    if (v > 0) {
      Integer pv = ipow(p, static_cast<unsigned long>(v));
      if (!mpz_divisible_p(term.get_mpz_t(), pv.get_mpz_t()))
        throw InvariantViolated("logarithm series term lost integrality");
      mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), pv.get_mpz_t());
    }
    term = mod(term * inv_mod(kk, work), work);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  sum = mod(sum * inv_mod(pm1, work), work);
  return ZModPN(u.modulus_ptr(), sum);
}

std::vector<Integer> digits(const Integer& value, const Integer& p, int count) {
  std::vector<Integer> out;
  out.reserve(count > 0 ? count : 0);
  Integer v = value;
  for (int i = 0; i < count; ++i) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    out.push_back(r);
    v = q;
  }
  return out;
}

std::string format_expansion(const Integer& p, const std::vector<Integer>& digs,
                             int first_exponent, int abs_precision) {
  std::ostringstream os;
  const std::string ps = p.get_str();
  bool first = true;
  for (std::size_t i = 0; i < digs.size(); ++i) {
    if (digs[i] == 0) continue;
    int e = first_exponent + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << digs[i].get_str();
      continue;
    }
    if (digs[i] != 1) os << digs[i].get_str() << "*";
    os << ps;
    if (e != 1) os << "^" << e;
  }
  if (!first) os << " + ";
  os << "O(" << ps;
  if (abs_precision != 1) os << "^" << abs_precision;
  os << ")";
  return os.str();
}

PadicNumber PadicNumber::zero(const Integer& p, int abs_precision) {
  PadicNumber z;
  z.p_ = p;
  z.zero_ = true;
  z.abs_ = abs_precision;
  z.unit_ = 0;
  return z;
}

PadicNumber PadicNumber::from_residue(const Integer& p, const Integer& residue,
                                      int residue_precision, int shift) {
  Integer r = mod(residue, ipow(p, static_cast<unsigned long>(residue_precision)));
  if (r == 0) return zero(p, shift + residue_precision);
  PadicNumber x;
  x.p_ = p;
  x.zero_ = false;
  Integer unit;
  int v = static_cast<int>(mpz_remove(unit.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t()));
  x.valuation_ = shift + v;
  x.precision_ = residue_precision - v;
  x.unit_ = unit;
  return x;
}

std::vector<Integer> PadicNumber::digits() const {
  if (zero_) return {};
  return padic::digits(unit_, p_, precision_);
}

std::string PadicNumber::to_string() const {
  if (zero_) return format_expansion(p_, {}, 0, abs_);
  return format_expansion(p_, digits(), valuation_, absolute_precision());
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  if (p_ != o.p_) throw ModulusMismatch("p-adic numbers over different primes");
  if (zero_ || o.zero_) {
    int a = zero_ ? abs_ + (o.zero_ ? o.abs_ : o.valuation_)
                  : valuation_ + o.abs_;
    if (zero_ && o.zero_) a = abs_ + o.abs_;
    return zero(p_, a);
  }
  int prec = std::min(precision_, o.precision_);
  return from_residue(p_, unit_ * o.unit_, prec, valuation_ + o.valuation_);
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) throw NotAUnit("zero has no inverse");
  Integer m = ipow(p_, static_cast<unsigned long>(precision_));
  return from_residue(p_, inv_mod(unit_, m), precision_, -valuation_);
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_ || a.zero_ != b.zero_) return false;
  if (a.zero_) return a.abs_ == b.abs_;
  return a.valuation_ == b.valuation_ && a.precision_ == b.precision_ && a.unit_ == b.unit_;
}

}  // namespace padic
