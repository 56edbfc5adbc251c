#include "padic/ntt.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace padic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Primes c * 2^32 + 1 below 2^62 with c odd, and a primitive 2^32-th root.
struct PrimeSpec {
  u64 p, root;
};
constexpr PrimeSpec kPrimes[3] = {
    {4611685318347718657ULL, 1987246491706964068ULL},
    {4611685232448372737ULL, 822924968455585315ULL},
    {4611684691282493441ULL, 2333496873055744784ULL},
};
constexpr int kMaxLog = 32;
// Transforms of length up to 2 kBlock run stage by stage inside the cache.
constexpr std::size_t kBlock = std::size_t{1} << 11;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

u64 shoup_companion(u64 w, u64 p) { return static_cast<u64>((static_cast<u128>(w) << 64) / p); }

// x * w mod p in [0, 2p) for any 64-bit x, given the companion of w.
inline u64 shoup(u64 x, u64 w, u64 wq, u64 p) {
  u64 q = static_cast<u64>((static_cast<u128>(x) * wq) >> 64);
  return x * w - q * p;
}

// Twiddles for one prime and one direction: w[h + j] = r_(2h)^j together
// with their Shoup companions. Entries for h depend only on h, so the table
// is grown on demand and shared by every transform length.
struct Table {
  std::vector<u64> w, wq;
};

struct PrimeData {
  u64 p, ninv;
  Table fwd, inv;
};

void grow(Table& t, u64 p, u64 root, int log_s) {
  const std::size_t S = std::size_t{1} << log_s;
  if (t.w.size() >= S) return;
  t.w.assign(S, 0);
  t.wq.assign(S, 0);
  for (std::size_t h = 1; h < S; h *= 2) {
    int lh = 0;
    while ((std::size_t{1} << lh) < 2 * h) ++lh;
    const u64 r = powmod(root, u64{1} << (kMaxLog - lh), p);
    u64 x = 1;
    for (std::size_t j = 0; j < h; ++j) {
      t.w[h + j] = x;
      t.wq[h + j] = shoup_companion(x, p);
      x = mulmod(x, r, p);
    }
  }
}

PrimeData& prime_data(int k, int log_s) {
  thread_local PrimeData data[3] = {};
  PrimeData& d = data[k];
  if (d.p == 0) {
    d.p = kPrimes[k].p;
    u64 inv = d.p;
    for (int i = 0; i < 6; ++i) inv *= 2 - d.p * inv;
    d.ninv = ~inv + 1;
  }
  grow(d.fwd, d.p, kPrimes[k].root, log_s);
  grow(d.inv, d.p, powmod(kPrimes[k].root, d.p - 2, d.p), log_s);
  return d;
}

// Gentleman-Sande stage of half-size h on [0, n); values stay in [0, 2p).
inline void dif_stage(u64* a, std::size_t n, std::size_t h, const Table& t, u64 p) {
  const u64 p2 = 2 * p;
  const u64* w = t.w.data() + h;
  const u64* wq = t.wq.data() + h;
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; ++j) {
      u64 u = x[j], v = y[j];
      u64 sum = u + v;
      x[j] = sum >= p2 ? sum - p2 : sum;
      y[j] = shoup(u - v + p2, w[j], wq[j], p);
    }
  }
}

// Cooley-Tukey stage of half-size h; inputs in [0, 4p), outputs in [0, 4p).
inline void dit_stage(u64* a, std::size_t n, std::size_t h, const Table& t, u64 p) {
  const u64 p2 = 2 * p;
  const u64* w = t.w.data() + h;
  const u64* wq = t.wq.data() + h;
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; ++j) {
      u64 u = x[j] >= p2 ? x[j] - p2 : x[j];
      u64 v = shoup(y[j], w[j], wq[j], p);
      x[j] = u + v;
      y[j] = u - v + p2;
    }
  }
}

// Natural order in, bit-reversed order out. Large lengths recurse depth
// first so each half is transformed while it is still in cache.
void forward(u64* a, std::size_t S, const Table& t, u64 p) {
  if (S <= 2 * kBlock) {
    for (std::size_t h = S / 2; h >= 1; h /= 2) dif_stage(a, S, h, t, p);
    return;
  }
  dif_stage(a, S, S / 2, t, p);
  forward(a, S / 2, t, p);
  forward(a + S / 2, S / 2, t, p);
}

// Bit-reversed order in, natural order out, unscaled.
void inverse(u64* a, std::size_t S, const Table& t, u64 p) {
  if (S <= 2 * kBlock) {
    for (std::size_t h = 1; h < S; h *= 2) dit_stage(a, S, h, t, p);
    return;
  }
  inverse(a, S / 2, t, p);
  inverse(a + S / 2, S / 2, t, p);
  dit_stage(a, S, S / 2, t, p);
}

// Montgomery product a b / 2^64 mod p in [0, 2p) for a, b < 2p.
inline u64 redc(u128 t, u64 p, u64 ninv) {
  u64 m = static_cast<u64>(t) * ninv;
  return static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
}

// Cyclic convolution modulo one prime, returned fully reduced.
std::vector<u64> convolve(int k, const mp_limb_t* a, std::size_t na, const mp_limb_t* b,
                          std::size_t nb, int log_s, bool square) {
  const PrimeData& d = prime_data(k, log_s);
  const u64 p = d.p;
  const std::size_t S = std::size_t{1} << log_s;
  const u64 one_q = shoup_companion(1, p);

  std::vector<u64> fa(S, 0);
  for (std::size_t i = 0; i < na; ++i) fa[i] = shoup(a[i], 1, one_q, p);
  forward(fa.data(), S, d.fwd, p);
  if (square) {
    for (std::size_t i = 0; i < S; ++i) fa[i] = redc(static_cast<u128>(fa[i]) * fa[i], p, d.ninv);
  } else {
    std::vector<u64> fb(S, 0);
    for (std::size_t i = 0; i < nb; ++i) fb[i] = shoup(b[i], 1, one_q, p);
    forward(fb.data(), S, d.fwd, p);
    for (std::size_t i = 0; i < S; ++i) fa[i] = redc(static_cast<u128>(fa[i]) * fb[i], p, d.ninv);
  }
  inverse(fa.data(), S, d.inv, p);

  // Undo the Montgomery factor 2^-64 and the transform length.
  const u64 r = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  const u64 c = mulmod(r, powmod(S % p, p - 2, p), p);
  const u64 cq = shoup_companion(c, p);
  for (std::size_t i = 0; i < S; ++i) {
    u64 x = shoup(fa[i], c, cq, p);
    fa[i] = x >= p ? x - p : x;
  }
  return fa;
}

}  // namespace

void ntt_mul(mpz_ptr r, mpz_srcptr a, mpz_srcptr b) {
  const std::size_t na = mpz_size(a), nb = mpz_size(b);
  if (na == 0 || nb == 0) {
    mpz_set_ui(r, 0);
    return;
  }
  const bool square = a == b;
  const bool negative = (mpz_sgn(a) < 0) != (mpz_sgn(b) < 0);
  int log_s = 0;
  while ((std::size_t{1} << log_s) < na + nb - 1) ++log_s;
  if (log_s > kMaxLog) {
    mpz_mul(r, a, b);
    return;
  }

  const mp_limb_t* ap = mpz_limbs_read(a);
  const mp_limb_t* bp = mpz_limbs_read(b);
  std::vector<u64> c[3];
  for (int k = 0; k < 3; ++k) c[k] = convolve(k, ap, na, bp, nb, log_s, square);

  const u64 p0 = kPrimes[0].p, p1 = kPrimes[1].p, p2 = kPrimes[2].p;
  const u64 inv_p0_mod_p1 = powmod(p0, p1 - 2, p1);
  const u64 inv_p0p1_mod_p2 = powmod(mulmod(p0 % p2, p1 % p2, p2), p2 - 2, p2);
  const u64 inv1_q = shoup_companion(inv_p0_mod_p1, p1);
  const u64 inv2_q = shoup_companion(inv_p0p1_mod_p2, p2);
  const u64 p0_mod_p2 = p0 % p2;
  const u64 p0_mod_p2_q = shoup_companion(p0_mod_p2, p2);
  const u128 p0p1 = static_cast<u128>(p0) * p1;
  const u64 q_lo = static_cast<u64>(p0p1), q_hi = static_cast<u64>(p0p1 >> 64);

  const std::size_t nr = na + nb;
  std::vector<mp_limb_t> out(nr, 0);
  // Running sum of the shifted convolution terms; acc[0] is emitted each step.
  u64 acc[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < nr; ++i) {
    if (i < na + nb - 1) {
      // Garner: x = r0 + p0 t1 + p0 p1 t2 with x < p0 p1 p2.
      const u64 r0 = c[0][i], r1 = c[1][i], r2 = c[2][i];
      const u64 r0_1 = r0 >= p1 ? r0 - p1 : r0;
      u64 t1 = shoup(r1 + p1 - r0_1, inv_p0_mod_p1, inv1_q, p1);
      if (t1 >= p1) t1 -= p1;
      // x01 = r0 + p0 t1 reduced mod p2.
      u64 x01 = shoup(t1, p0_mod_p2, p0_mod_p2_q, p2);
      x01 = x01 >= p2 ? x01 - p2 : x01;
      const u64 r0_2 = r0 >= p2 ? r0 - p2 : r0;
      x01 += r0_2;
      x01 = x01 >= p2 ? x01 - p2 : x01;
      u64 t2 = shoup(r2 + p2 - x01, inv_p0p1_mod_p2, inv2_q, p2);
      if (t2 >= p2) t2 -= p2;

      const u128 a01 = static_cast<u128>(p0) * t1 + r0;
      const u128 lo = static_cast<u128>(q_lo) * t2;
      const u128 hi = static_cast<u128>(q_hi) * t2;
      u64 x[4];
      u128 s = static_cast<u128>(static_cast<u64>(lo)) + static_cast<u64>(a01);
      x[0] = static_cast<u64>(s);
      s = (s >> 64) + static_cast<u64>(lo >> 64) + static_cast<u64>(hi) +
          static_cast<u64>(a01 >> 64);
      x[1] = static_cast<u64>(s);
      s = (s >> 64) + static_cast<u64>(hi >> 64);
      x[2] = static_cast<u64>(s);
      x[3] = static_cast<u64>(s >> 64);
      u128 carry = 0;
      for (int k = 0; k < 4; ++k) {
        carry += static_cast<u128>(acc[k]) + x[k];
        acc[k] = static_cast<u64>(carry);
        carry >>= 64;
      }
    }
    out[i] = acc[0];
    acc[0] = acc[1];
    acc[1] = acc[2];
    acc[2] = acc[3];
    acc[3] = 0;
  }

  std::size_t n = nr;
  while (n > 0 && out[n - 1] == 0) --n;
  mp_limb_t* w = mpz_limbs_write(r, static_cast<mp_size_t>(std::max<std::size_t>(n, 1)));
  std::copy(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), w);
  mpz_limbs_finish(r, negative ? -static_cast<mp_size_t>(n) : static_cast<mp_size_t>(n));
}

}  // namespace padic
