#include "padic/series.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "padic/ntt.hpp"

namespace padic {

namespace {

void reduce_all(std::vector<Integer>& c, const Integer& m) {
  for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

std::size_t bit_length(std::size_t n) {
  std::size_t b = 0;
  while (n) {
    ++b;
    n >>= 1;
  }
  return b;
}

// Packs coefficients into one integer, `limbs` limbs per slot.
void pack(mpz_t out, const std::vector<Integer>& a, std::size_t n, std::size_t limbs) {
  mp_limb_t* w = mpz_limbs_write(out, static_cast<mp_size_t>(n * limbs));
  std::memset(w, 0, n * limbs * sizeof(mp_limb_t));
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_srcptr c = a[i].get_mpz_t();
    std::size_t sz = mpz_size(c);
    if (sz) std::memcpy(w + i * limbs, mpz_limbs_read(c), sz * sizeof(mp_limb_t));
  }
  mpz_limbs_finish(out, static_cast<mp_size_t>(n * limbs));
}

}  // namespace

std::vector<Integer> poly_mul_schoolbook(const std::vector<Integer>& a,
                                         const std::vector<Integer>& b, const Integer& m,
                                         std::size_t trunc) {
  std::vector<Integer> r(trunc);
  for (std::size_t i = 0; i < a.size() && i < trunc; ++i) {
    if (a[i] == 0) continue;
    std::size_t lim = std::min(b.size(), trunc - i);
    for (std::size_t j = 0; j < lim; ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  reduce_all(r, m);
  return r;
}

std::vector<Integer> poly_mul_trunc(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                    const Integer& m, std::size_t trunc) {
  std::size_t na = std::min(a.size(), trunc), nb = std::min(b.size(), trunc);
  if (na == 0 || nb == 0) return std::vector<Integer>(trunc);
  if (std::min(na, nb) < kSchoolbookCutoff) return poly_mul_schoolbook(a, b, m, trunc);

  // Each product coefficient is a sum of at most min(na, nb) products of
  // residues below m, so it fits in 2*bits(m) + bits(min(na, nb)) bits.
  std::size_t slot_bits =
      2 * mpz_sizeinbase(m.get_mpz_t(), 2) + bit_length(std::min(na, nb)) + 1;
  std::size_t limbs = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

  mpz_t x, y;
  mpz_init(x);
  mpz_init(y);
  const bool square = &a == &b;
  pack(x, a, na, limbs);
  if (!square) pack(y, b, nb, limbs);
  mpz_srcptr yy = square ? x : y;
  if (std::min(mpz_size(x), mpz_size(yy)) >= kNttThresholdLimbs)
    ntt_mul(x, x, yy);
  else
    mpz_mul(x, x, yy);

  std::vector<Integer> r(trunc);
  const mp_limb_t* zp = mpz_limbs_read(x);
  std::size_t zn = mpz_size(x);
  for (std::size_t i = 0; i < trunc; ++i) {
    std::size_t lo = i * limbs;
    if (lo >= zn) break;
    std::size_t len = std::min(limbs, zn - lo);
    mpz_ptr c = r[i].get_mpz_t();
    mp_limb_t* w = mpz_limbs_write(c, static_cast<mp_size_t>(len));
    std::memcpy(w, zp + lo, len * sizeof(mp_limb_t));
    mpz_limbs_finish(c, static_cast<mp_size_t>(len));
    mpz_mod(c, c, m.get_mpz_t());
  }
  mpz_clear(x);
  mpz_clear(y);
  return r;
}

PadicSeries::PadicSeries(ModulusPtr m, std::vector<Integer> coeffs, int offset)
    : mod_(std::move(m)), coeffs_(std::move(coeffs)), offset_(offset) {
  reduce_all(coeffs_, mod_->pN);
}

PadicSeries PadicSeries::zero(ModulusPtr m, int len, int offset) {
  return PadicSeries(std::move(m), std::vector<Integer>(static_cast<std::size_t>(len)), offset);
}

PadicSeries PadicSeries::one(ModulusPtr m, int len) {
  std::vector<Integer> c(static_cast<std::size_t>(len));
  if (len > 0) c[0] = 1;
  return PadicSeries(std::move(m), std::move(c), 0);
}

PadicSeries PadicSeries::from_longs(ModulusPtr m, const std::vector<long>& c, int offset) {
  std::vector<Integer> v(c.begin(), c.end());
  return PadicSeries(std::move(m), std::move(v), offset);
}

Integer PadicSeries::at_power(int e) const {
  int i = e - offset_;
  if (i < 0) return 0;
  if (i >= size()) throw InvalidArgument("coefficient beyond the known order");
  return coeffs_[static_cast<std::size_t>(i)];
}

PadicSeries PadicSeries::truncated(int len) const {
  std::vector<Integer> c(coeffs_.begin(), coeffs_.begin() + std::min(len, size()));
  c.resize(static_cast<std::size_t>(len));
  PadicSeries r(mod_, {}, offset_);
  r.coeffs_ = std::move(c);
  return r;
}

PadicSeries PadicSeries::truncated_order(int e) const {
  return truncated(std::max(0, std::min(size(), e - offset_)));
}

PadicSeries PadicSeries::with_offset(int new_offset) const {
  if (new_offset > offset_) {
    for (int i = 0; i < new_offset - offset_ && i < size(); ++i)
      if (coeffs_[static_cast<std::size_t>(i)] != 0)
        throw InvalidArgument("with_offset would drop nonzero coefficients");
    std::vector<Integer> c(coeffs_.begin() + std::min(size(), new_offset - offset_),
                           coeffs_.end());
    PadicSeries r(mod_, {}, new_offset);
    r.coeffs_ = std::move(c);
    return r;
  }
  std::vector<Integer> c(static_cast<std::size_t>(offset_ - new_offset));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  PadicSeries r(mod_, {}, new_offset);
  r.coeffs_ = std::move(c);
  return r;
}

PadicSeries PadicSeries::shifted(int k) const {
  PadicSeries r = *this;
  r.offset_ += k;
  return r;
}

PadicSeries PadicSeries::lifted(ModulusPtr m) const {
  if (m->p != mod_->p) throw ModulusMismatch("lift must keep the prime");
  return PadicSeries(std::move(m), coeffs_, offset_);
}

PadicSeries PadicSeries::operator-() const {
  std::vector<Integer> c = coeffs_;
  for (auto& x : c) x = -x;
  return PadicSeries(mod_, std::move(c), offset_);
}

PadicSeries PadicSeries::scaled(const Integer& s) const {
  std::vector<Integer> c = coeffs_;
  for (auto& x : c) x *= s;
  return PadicSeries(mod_, std::move(c), offset_);
}

namespace {

PadicSeries combine(const PadicSeries& a, const PadicSeries& b, bool subtract) {
  if (a.modulus().p != b.modulus().p || a.modulus().N != b.modulus().N)
    throw ModulusMismatch("series over different rings");
  int lo = std::min(a.offset(), b.offset());
  int hi = std::min(a.order(), b.order());
  std::vector<Integer> c(static_cast<std::size_t>(std::max(0, hi - lo)));
  for (int e = lo; e < hi; ++e) {
    Integer v = a.at_power(e);
    if (subtract)
      v -= b.at_power(e);
    else
      v += b.at_power(e);
    c[static_cast<std::size_t>(e - lo)] = v;
  }
  return PadicSeries(a.modulus_ptr(), std::move(c), lo);
}

}  // namespace

PadicSeries operator+(const PadicSeries& a, const PadicSeries& b) { return combine(a, b, false); }
PadicSeries operator-(const PadicSeries& a, const PadicSeries& b) { return combine(a, b, true); }

bool operator==(const PadicSeries& a, const PadicSeries& b) {
  return a.mod_->p == b.mod_->p && a.mod_->N == b.mod_->N && a.offset_ == b.offset_ &&
         a.coeffs_ == b.coeffs_;
}

std::string PadicSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < size(); ++i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    int e = offset_ + i;
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << "t";
    if (e != 1) os << "^" << e;
  }
  if (!first) os << " + ";
  os << "O(t^" << order() << ")";
  return os.str();
}

namespace {

void check_compatible(const PadicSeries& f, const PadicSeries& g) {
  if (f.modulus().p != g.modulus().p || f.modulus().N != g.modulus().N)
    throw ModulusMismatch("series over different rings");
}

}  // namespace

PadicSeries series_mul(const PadicSeries& f, const PadicSeries& g, int trunc) {
  check_compatible(f, g);
  if (trunc < 1) throw InvalidArgument("truncation length must be >= 1");
  auto c = poly_mul_trunc(f.coeffs(), g.coeffs(), f.modulus().pN, static_cast<std::size_t>(trunc));
  return PadicSeries(f.modulus_ptr(), std::move(c), f.offset() + g.offset());
}

PadicSeries series_mul_schoolbook(const PadicSeries& f, const PadicSeries& g, int trunc) {
  check_compatible(f, g);
  if (trunc < 1) throw InvalidArgument("truncation length must be >= 1");
  auto c = poly_mul_schoolbook(f.coeffs(), g.coeffs(), f.modulus().pN,
                               static_cast<std::size_t>(trunc));
  return PadicSeries(f.modulus_ptr(), std::move(c), f.offset() + g.offset());
}

PadicSeries series_inv(const PadicSeries& f, int trunc) {
  if (trunc < 1) throw InvalidArgument("truncation length must be >= 1");
  if (f.size() == 0) throw NotAUnit("empty series is not invertible");
  const Integer& m = f.modulus().pN;
  if (mpz_divisible_p(f[0].get_mpz_t(), f.modulus().p.get_mpz_t()))
    throw NotAUnit("leading coefficient of the series is divisible by p");

  std::vector<Integer> g{inv_mod(f[0], m)};
  std::size_t len = 1;
  const std::size_t target = static_cast<std::size_t>(trunc);
  while (len < target) {
    std::size_t len2 = std::min(2 * len, target);
    auto e = poly_mul_trunc(f.coeffs(), g, m, len2);
    // g <- g * (2 - f g)
    for (auto& x : e) x = -x;
    e[0] += 2;
    reduce_all(e, m);
    g = poly_mul_trunc(g, e, m, len2);
    len = len2;
  }
  g.resize(target);
  return PadicSeries(f.modulus_ptr(), std::move(g), -f.offset());
}

Integration series_integrate(const PadicSeries& f) {
  const Integer& p = f.modulus().p;
  const Integer& m = f.modulus().pN;
  std::vector<Integer> out(static_cast<std::size_t>(f.size()));
  std::vector<int> loss(static_cast<std::size_t>(f.size()), 0);
  for (int i = 0; i < f.size(); ++i) {
    const Integer& c = f[i];
    int e = f.offset() + i + 1;  // exponent after integration
    if (e == 0) {
      if (c != 0) throw NotIntegrable("nonzero t^-1 coefficient cannot be integrated");
      continue;
    }
    if (c == 0) continue;
    Integer unit;
    Integer ee = e < 0 ? Integer(-e) : Integer(e);
    int v = static_cast<int>(mpz_remove(unit.get_mpz_t(), ee.get_mpz_t(), p.get_mpz_t()));
    Integer q = c;
    if (v > 0) {
      Integer pv = ipow(p, static_cast<unsigned long>(v));
      if (!mpz_divisible_p(c.get_mpz_t(), pv.get_mpz_t()))
        throw NotIntegrable("coefficient of t^" + std::to_string(e - 1) +
                            " is not divisible by p^" + std::to_string(v));
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), pv.get_mpz_t());
      loss[static_cast<std::size_t>(i)] = v;
    }
    if (e < 0) unit = -unit;
    out[static_cast<std::size_t>(i)] = q * inv_mod(unit, m);
  }
  return {PadicSeries(f.modulus_ptr(), std::move(out), f.offset() + 1), std::move(loss)};
}

PadicSeries series_derivative(const PadicSeries& f) {
  std::vector<Integer> out(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) out[static_cast<std::size_t>(i)] = f[i] * (f.offset() + i);
  if (f.offset() == 0) {
    // The constant term differentiates away; keep offset 0.
    out.erase(out.begin());
    return PadicSeries(f.modulus_ptr(), std::move(out), 0);
  }
  return PadicSeries(f.modulus_ptr(), std::move(out), f.offset() - 1);
}

IdealSeries::IdealSeries(Integer p, int N, std::vector<Integer> coeffs)
    : p_(std::move(p)), N_(N), coeffs_(std::move(coeffs)) {
  coeffs_.resize(static_cast<std::size_t>(std::max(N_, 1)));
  coeffs_[0] = 0;
  for (int k = 1; k < N_; ++k)
    coeffs_[static_cast<std::size_t>(k)] =
        mod(coeffs_[static_cast<std::size_t>(k)], ipow(p_, static_cast<unsigned long>(N_ - k)));
}

IdealSeries IdealSeries::truncated(int M) const {
  if (M > N_) throw InvalidArgument("cannot refine an ideal series");
  std::vector<Integer> c(coeffs_.begin(), coeffs_.begin() + std::max(M, 1));
  return IdealSeries(p_, M, std::move(c));
}

bool operator==(const IdealSeries& a, const IdealSeries& b) {
  return a.p_ == b.p_ && a.N_ == b.N_ && a.coeffs_ == b.coeffs_;
}

std::string IdealSeries::to_string() const {
  std::ostringstream os;
  for (int k = 1; k < N_; ++k) {
    if (k > 1) os << " + ";
    os << "(" << coeff(k).get_str() << " + O(" << p_.get_str() << "^" << (N_ - k) << "))";
    os << "*t";
    if (k != 1) os << "^" << k;
  }
  if (N_ > 1) os << " + ";
  os << "O(t^" << N_ << ")";
  return os.str();
}

}  // namespace padic
